#include "mlfft/lattice_io.hpp"

#include <json.hpp>

#include "mlfft/errors.hpp"

namespace mlfft {

using nlohmann::json;

std::string lattice_to_json(const LatticeDocument& doc) {
    json j;
    j["d"] = doc.d;
    j["index_set_hash"] = doc.index_set_hash;
    j["components"] = json::array();
    for (const auto& c : doc.components) j["components"].push_back({{"z", c.z}, {"M", c.M}});
    j["seed"] = doc.seed;
    j["c"] = doc.c;
    j["delta"] = doc.delta;
    return j.dump(2) + "\n";
}

LatticeDocument lattice_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        LatticeDocument doc;
        doc.d = j.at("d").get<int>();
        doc.index_set_hash = j.at("index_set_hash").get<std::string>();
        doc.seed = j.at("seed").get<std::uint64_t>();
        doc.c = j.at("c").get<double>();
        doc.delta = j.at("delta").get<double>();
        for (const auto& c : j.at("components")) {
            auto z = c.at("z").get<std::vector<std::int64_t>>();
            if (static_cast<int>(z.size()) != doc.d) throw ParseError("lattice JSON: component has wrong dimension");
            doc.components.emplace_back(std::move(z), c.at("M").get<std::int64_t>());
        }
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("lattice JSON: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("lattice JSON: ") + e.what());
    }
}

std::string report_to_json(const ConstructionReport& rep) {
    json j;
    j["L"] = rep.L;
    j["L_max"] = rep.L_max;
    j["lambda"] = rep.lambda;
    j["primes_tried"] = rep.primes_tried;
    j["rejected_components"] = rep.rejected_components;
    j["covered"] = rep.covered;
    j["uncovered_count"] = rep.uncovered.size();
    json unc = json::array();
    for (std::size_t i = 0; i < rep.uncovered.size(); ++i) {
        auto k = rep.uncovered[i];
        unc.push_back(std::vector<std::int64_t>(k.begin(), k.end()));
    }
    j["uncovered"] = unc;
    j["seed"] = rep.seed;
    j["warnings"] = rep.warnings;
    return j.dump(2) + "\n";
}

}  // namespace mlfft
