#include "mlfft/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlfft/construct.hpp"
#include "mlfft/errors.hpp"
#include "mlfft/experiment.hpp"
#include "mlfft/lattice_io.hpp"
#include "mlfft/set_spec.hpp"

namespace mlfft {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

template <class T>
std::vector<T> parse_list(const std::string& text, T (*conv)(const std::string&)) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(start, comma - start);
        if (item.empty()) throw ParseError("empty item in list '" + text + "'");
        out.push_back(conv(item));
        start = comma + 1;
    }
    return out;
}

int to_int(const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad integer '" + s + "'");
    }
    if (pos != s.size()) throw ParseError("bad integer '" + s + "'");
    return v;
}

struct BuildOptions {
    std::string set;
    double c = 2.0;
    double delta = 0.5;
    std::uint64_t seed = 0;
    int retries = 3;
    std::string out_dir = ".";
};

int cmd_build(const BuildOptions& o, std::ostream& out) {
    const auto spec = parse_set_spec(o.set);
    auto I = std::make_shared<const FrequencyIndexSet>(materialize(spec));
    if (I->empty()) throw InvalidArgument("index set is empty");
    ConstructionParams params;
    params.c = o.c;
    params.delta = o.delta;
    params.seed = o.seed;
    fs::create_directories(o.out_dir);
    const fs::path dir(o.out_dir);
    try {
        auto res = build_with_retries(I, params, o.retries);
        LatticeDocument doc{I->dim(), index_set_hash(*I), res.lattice.components(), res.report.seed, o.c, o.delta};
        write_file(dir / "lattice.json", lattice_to_json(doc));
        write_file(dir / "report.json", report_to_json(res.report));
        write_file(dir / "index_set.txt", index_set_to_string(*I));
        out << "covered |I|=" << I->size() << " L=" << res.report.L << " M=" << sum_of_sizes(res.lattice)
            << " seed=" << res.report.seed << "\n";
        for (const auto& w : res.report.warnings) out << "warning: " << w << "\n";
        return exit_code::ok;
    } catch (const NotCovered& e) {
        write_file(dir / "report.json", report_to_json(e.report()));
        out << "not covered: " << e.report().uncovered.size() << " frequencies left after retries\n";
        return exit_code::not_covered;
    }
}

int cmd_verify(const std::string& lattice_path, const std::string& set_path, std::ostream& out) {
    const auto doc = lattice_from_json(read_file(lattice_path));
    std::istringstream set_text(read_file(set_path));
    auto I = std::make_shared<const FrequencyIndexSet>(read_index_set(set_text));
    const std::string hash = index_set_hash(*I);
    if (hash != doc.index_set_hash || doc.d != I->dim()) {
        out << "index set hash " << hash << " does not match lattice (" << doc.index_set_hash << ")\n";
        return exit_code::hash_mismatch;
    }
    const MultipleLattice ml(I, doc.components);
    const auto rep = coverage_check(ml, *I);
    out << (rep.covered ? "covered" : "NOT covered") << " |I|=" << I->size() << " L=" << ml.size()
        << " M=" << sum_of_sizes(ml) << "\n";
    for (std::size_t l = 0; l < ml.size(); ++l)
        out << "component " << l << " M=" << ml.components()[l].M << " |I_l|=" << ml.free_indices()[l].size() << "\n";
    std::map<std::uint32_t, std::size_t> hist;
    for (auto c : rep.counters) ++hist[c];
    out << "counter histogram:";
    for (const auto& [c, n] : hist) out << " " << c << ":" << n;
    out << "\n";
    for (std::size_t i = 0; i < rep.uncovered.size(); ++i) {
        out << "uncovered";
        for (auto v : rep.uncovered[i]) out << " " << v;
        out << "\n";
    }
    return rep.covered ? exit_code::ok : exit_code::not_covered;
}

int cmd_set(const std::string& set, const std::string& path, std::ostream& out) {
    const auto I = materialize(parse_set_spec(set));
    if (!path.empty()) write_file(path, index_set_to_string(I));
    out << "d=" << I.dim() << " card=" << I.size() << " hash=" << index_set_hash(I) << "\n";
    return exit_code::ok;
}

int cmd_experiment(ExperimentConfig cfg, const std::string& dims, const std::string& refinements,
                   const std::string& T, const std::string& out_dir, std::ostream& out, std::ostream& err) {
    cfg.dims = parse_list<int>(dims, to_int);
    cfg.refinements = parse_list<double>(refinements, parse_real);
    cfg.T = parse_real(T);
    validate(cfg);
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_file(dir / "config.json", config_to_json(cfg));
    const auto started = std::chrono::system_clock::now();
    const auto res = run_experiment(cfg);
    write_file(dir / "results.csv", records_to_csv(res.records));
    for (const auto& f : res.failures) err << "skipped " << f << "\n";
    nlohmann::json meta;
    const std::time_t t = std::chrono::system_clock::to_time_t(started);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    meta["started_utc"] = stamp;
    meta["rows"] = res.records.size();
    meta["skipped"] = res.failures;
    write_file(dir / "metadata.json", meta.dump(2) + "\n");
    out << "wrote " << res.records.size() << " rows to " << (dir / "results.csv").string() << "\n";
    return exit_code::ok;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple rank-1 lattice construction and sampling experiments"};
    app.require_subcommand(1);

    BuildOptions bo;
    auto* build = app.add_subcommand("build", "Construct a reconstructing multiple rank-1 lattice");
    build->add_option("--set", bo.set, "Index set spec, e.g. hc:d=3,N=8,T=0")->required();
    build->add_option("--c", bo.c, "Oversampling factor c > 1");
    build->add_option("--delta", bo.delta, "Failure probability bound in (0,1)");
    build->add_option("--seed", bo.seed, "RNG seed");
    build->add_option("--retries", bo.retries, "Retries with derived seeds");
    build->add_option("--out-dir", bo.out_dir, "Directory for lattice.json, report.json, index_set.txt");

    std::string lattice_path, set_path;
    auto* verify = app.add_subcommand("verify", "Check that a lattice covers an index set");
    verify->add_option("--lattice", lattice_path, "Lattice JSON file")->required();
    verify->add_option("--index-set", set_path, "Index set file")->required();

    std::string set_spec, set_out;
    auto* set = app.add_subcommand("set", "Generate an index set file");
    set->add_option("--set", set_spec, "Index set spec")->required();
    set->add_option("--out", set_out, "Output file");

    ExperimentConfig cfg;
    std::string dims, refinements, T = "0", out_dir;
    auto* exp = app.add_subcommand("experiment", "Run an error sweep and write results.csv");
    exp->add_option("--function", cfg.function, "g34, g3 or kink");
    exp->add_option("--dims", dims, "Comma separated dimensions")->required();
    exp->add_option("--family", cfg.family, "hc or dyadic");
    exp->add_option("--T", T, "Shape parameter (real or -inf)");
    exp->add_flag("--even", cfg.even, "Keep only all-even frequencies");
    exp->add_option("--refinements", refinements, "Comma separated N (hc) or n (dyadic)")->required();
    exp->add_option("--scheme", cfg.scheme, "single, multiple or both");
    exp->add_option("--c", cfg.c, "Oversampling factor");
    exp->add_option("--delta", cfg.delta, "Failure probability bound");
    exp->add_option("--seed", cfg.seed, "Base seed");
    exp->add_option("--retries", cfg.retries, "Construction retries per point");
    exp->add_option("--threads", cfg.threads, "Worker threads");
    exp->add_option("--max-card", cfg.max_card, "Cardinality cap");
    exp->add_option("--max-M", cfg.max_M, "Sample budget per point");
    exp->add_option("--out", out_dir, "Run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    }

    try {
        if (*build) return cmd_build(bo, out);
        if (*verify) return cmd_verify(lattice_path, set_path, out);
        if (*set) return cmd_set(set_spec, set_out, out);
        if (*exp) return cmd_experiment(cfg, dims, refinements, T, out_dir, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const CapacityExceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::cap_exceeded;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::failure;
    }
    return exit_code::usage;
}

}  // namespace mlfft
