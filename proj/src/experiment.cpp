#include "mlfft/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mlfft/construct.hpp"
#include "mlfft/errors.hpp"
#include "mlfft/rng.hpp"
#include "mlfft/transform.hpp"

namespace mlfft {

namespace {

struct Point {
    std::string scheme;
    int d = 0;
    double refinement = 0;
    std::string key;
};

struct Outcome {
    std::optional<ErrorRecord> record;
    std::string failure;
};

FrequencyIndexSet point_set(const ExperimentConfig& cfg, const Point& p) {
    FrequencyIndexSet I = cfg.family == "hc"
                              ? generate_hc(p.d, p.refinement, cfg.T, cfg.max_card)
                              : generate_dyadic(p.d, static_cast<int>(p.refinement), cfg.max_card);
    return cfg.even ? filter_even(I) : I;
}

Outcome run_point(const ExperimentConfig& cfg, const Point& p) {
    Outcome out;
    try {
        auto I = std::make_shared<const FrequencyIndexSet>(point_set(cfg, p));
        const TensorTestFunction fn(parse_test_function(cfg.function), p.d);
        const PointFunction f = [&fn](std::span<const double> x) { return cplx(fn.eval(x)); };
        const std::uint64_t seed = cfg.seed ^ stable_hash(p.key);

        ErrorRecord rec;
        rec.scheme = p.scheme;
        rec.d = p.d;
        rec.T = cfg.family == "hc" ? cfg.T : std::nan("");
        rec.N = p.refinement;
        rec.cardinality = I->size();

        Approximation approx;
        if (p.scheme == "multiple") {
            const int l_max = compute_l_max(I->size(), cfg.c, cfg.delta);
            const double m_est = cfg.c * static_cast<double>(I->size()) * l_max;
            if (m_est > static_cast<double>(cfg.max_M)) {
                out.failure = p.key + ": sample budget " + std::to_string(cfg.max_M) + " too small";
                return out;
            }
            ConstructionParams params;
            params.c = cfg.c;
            params.delta = cfg.delta;
            params.seed = seed;
            auto built = build_with_retries(I, params, cfg.retries);
            approx = approximate(f, built.lattice);
            rec.L = built.report.L;
            rec.seed = built.report.seed;
        } else {
            if (static_cast<std::int64_t>(I->size()) > cfg.max_M) {
                out.failure = p.key + ": sample budget " + std::to_string(cfg.max_M) + " too small";
                return out;
            }
            auto cbc = build_single_lattice_cbc(*I, seed);
            approx = approximate_single(f, I, cbc.lattice);
            rec.L = 1;
            rec.seed = seed;
        }
        rec.M = approx.sample_count;
        const auto errs = relative_errors(fn, *I, approx.coeffs.values);
        rec.rel_err_A = errs.rel_a;
        rec.rel_err_L2 = errs.rel_l2;
        out.record = rec;
    } catch (const NotCovered& e) {
        out.failure = p.key + ": not covered after retries";
    } catch (const std::exception& e) {
        out.failure = p.key + ": " + e.what();
    }
    return out;
}

}  // namespace

std::string format_sci(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.dims.empty()) throw ParseError("experiment: empty dims list");
    if (cfg.refinements.empty()) throw ParseError("experiment: empty refinement list");
    for (int d : cfg.dims)
        if (d < 1) throw ParseError("experiment: dimensions must be >= 1");
    parse_test_function(cfg.function);
    if (cfg.family != "hc" && cfg.family != "dyadic") throw ParseError("experiment: family must be hc or dyadic");
    if (cfg.scheme != "single" && cfg.scheme != "multiple" && cfg.scheme != "both")
        throw ParseError("experiment: scheme must be single, multiple or both");
    if (!(cfg.c > 1)) throw ParseError("experiment: c must exceed 1");
    if (!(cfg.delta > 0 && cfg.delta < 1)) throw ParseError("experiment: delta must lie in (0,1)");
    if (cfg.threads < 1) throw ParseError("experiment: threads must be >= 1");
    if (cfg.retries < 0) throw ParseError("experiment: retries must be >= 0");
    if (cfg.family == "hc" && !(cfg.T < 1)) throw ParseError("experiment: T must be < 1");
    for (double r : cfg.refinements) {
        if (cfg.family == "hc" && !(r >= 1 && std::isfinite(r))) throw ParseError("experiment: N must be >= 1");
        if (cfg.family == "dyadic" && !(r >= 0 && r == std::floor(r))) throw ParseError("experiment: n must be a nonnegative integer");
    }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<Point> points;
    std::vector<std::string> schemes;
    if (cfg.scheme == "both") schemes = {"multiple", "single"};
    else schemes = {cfg.scheme};
    for (const auto& s : schemes)
        for (int d : cfg.dims)
            for (double r : cfg.refinements) {
                Point p{s, d, r, {}};
                p.key = s + "|" + cfg.function + "|" + cfg.family + (cfg.even ? "-even" : "") + "|d=" +
                        std::to_string(d) + "|T=" + format_sci(cfg.T) + "|N=" + format_sci(r);
                points.push_back(std::move(p));
            }
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        if (a.d != b.d) return a.d < b.d;
        return a.refinement < b.refinement;
    });
    points.erase(std::unique(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.key == b.key; }),
                 points.end());

    std::vector<Outcome> outcomes(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < points.size();) outcomes[i] = run_point(cfg, points[i]);
    };
    const int nthreads = std::min<int>(cfg.threads, static_cast<int>(std::max<std::size_t>(1, points.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    ExperimentResult res;
    for (auto& o : outcomes) {
        if (o.record) res.records.push_back(*o.record);
        else res.failures.push_back(o.failure);
    }
    return res;
}

std::string records_to_csv(const std::vector<ErrorRecord>& records) {
    std::ostringstream os;
    os << "scheme,d,T,N,card,M,L,rel_err_A,rel_err_L2,seed\r\n";
    for (const auto& r : records)
        os << r.scheme << ',' << r.d << ',' << format_sci(r.T) << ',' << format_sci(r.N) << ',' << r.cardinality
           << ',' << r.M << ',' << r.L << ',' << format_sci(r.rel_err_A) << ',' << format_sci(r.rel_err_L2) << ','
           << r.seed << "\r\n";
    return os.str();
}

std::string config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["function"] = cfg.function;
    j["dims"] = cfg.dims;
    j["family"] = cfg.family;
    j["T"] = format_sci(cfg.T);
    j["even"] = cfg.even;
    j["refinements"] = cfg.refinements;
    j["scheme"] = cfg.scheme;
    j["c"] = cfg.c;
    j["delta"] = cfg.delta;
    j["seed"] = cfg.seed;
    j["retries"] = cfg.retries;
    j["threads"] = cfg.threads;
    j["max_card"] = cfg.max_card;
    j["max_M"] = cfg.max_M;
    return j.dump(2) + "\n";
}

}  // namespace mlfft
