// sphere-dpp: batch CLI for sampling determinantal point processes on S^d,
// computing discrete Riesz/log energies, evaluating the closed-form and
// asymptotic expectations, and emitting distribution statistics and
// figure data. All randomness flows from --seed; identical command lines
// give byte-identical output files regardless of --threads.

#include <cstdlib>
#include <fstream>
#include <limits>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sphdpp/energy.hpp"
#include "sphdpp/errors.hpp"
#include "sphdpp/io.hpp"
#include "sphdpp/kernels.hpp"
#include "sphdpp/parallel.hpp"
#include "sphdpp/quadrature.hpp"
#include "sphdpp/sampling.hpp"
#include "sphdpp/specfun.hpp"
#include "sphdpp/stats.hpp"

namespace {

using nlohmann::json;
using namespace sphdpp;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitSamplerStall = 4;

struct OutputTarget {
    std::string path; // empty: stdout

    template <typename Fn>
    void write(Fn&& fn) const {
        if (path.empty()) {
            fn(std::cout);
            return;
        }
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        fn(os);
    }
};

std::unique_ptr<ZonalKernel> load_kernel(int d, std::optional<int> L,
                                         const std::string& kernel_path) {
    if (L && !kernel_path.empty())
        throw std::invalid_argument("give either --L or --kernel, not both");
    if (L) return std::make_unique<HarmonicEnsemble>(d, *L);
    if (!kernel_path.empty()) {
        std::ifstream is(kernel_path);
        if (!is) throw std::invalid_argument("cannot read kernel file: " + kernel_path);
        std::stringstream buffer;
        buffer << is.rdbuf();
        auto k = std::make_unique<ProjectionKernel>(ProjectionKernel::from_json(buffer.str()));
        if (k->dim() != d)
            throw std::invalid_argument("kernel file dimension disagrees with --d");
        return k;
    }
    throw std::invalid_argument("one of --L or --kernel is required");
}

json kernel_to_json(const ZonalKernel& k) {
    if (const auto* h = dynamic_cast<const HarmonicEnsemble*>(&k))
        return {{"d", h->dim()}, {"L", h->max_degree()}};
    const auto* p = dynamic_cast<const ProjectionKernel*>(&k);
    return json::parse(p->to_json());
}

// ---------------------------------------------------------------- sample
struct SampleArgs {
    int d = 2;
    std::optional<int> L;
    std::string kernel_path;
    bool uniform = false;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    OutputTarget out;
};

int run_sample(const SampleArgs& a) {
    json meta;
    meta["seed"] = a.seed;
    meta["stream"] = a.stream;
    meta["d"] = a.d;
    if (a.uniform) {
        if (a.n == 0) throw std::invalid_argument("--uniform requires --n");
        meta["kernel"] = "uniform";
        meta["n"] = a.n;
        const PointConfiguration x = sample_uniform(a.d, a.n, {a.seed, a.stream});
        a.out.write([&](std::ostream& os) { write_points_csv(os, x, meta.dump()); });
        return 0;
    }
    const auto kernel = load_kernel(a.d, a.L, a.kernel_path);
    meta["kernel"] = kernel_to_json(*kernel);
    meta["n"] = kernel->trace();
    const PointConfiguration x = sample_dpp(*kernel, {a.seed, a.stream});
    a.out.write([&](std::ostream& os) { write_points_csv(os, x, meta.dump()); });
    return 0;
}

// ---------------------------------------------------------------- energy
struct EnergyArgs {
    std::string input;
    double s = 0.0; // 0 encodes the logarithmic energy
    std::string format = "json";
    OutputTarget out;
};

std::optional<double> harmonic_asymptotic(int d, int L, double s) {
    const double n = static_cast<double>(dim_pi(d, L));
    if (s == 0.0)
        return n * n * continuous_vlog(d) - n * std::log(n) / d + log_asymptotic_constant(d) * n;
    if (s < static_cast<double>(d))
        return n * n * continuous_vs(d, s) -
               asymptotic_riesz_constant(d, s) * std::pow(n, 1.0 + s / d);
    if (s == static_cast<double>(d)) {
        const double lead = sphere_surface(d - 1) / (d * sphere_surface(d));
        return lead * n * n * std::log(n) + singular_asymptotic_constant(d) * n * n;
    }
    return std::nullopt;
}

int run_energy(const EnergyArgs& a) {
    std::ifstream is(a.input);
    if (!is) throw std::invalid_argument("cannot read input file: " + a.input);
    const LoadedPoints loaded = read_points_csv(is);
    const PointConfiguration& x = loaded.points;

    EnergyReport report;
    report.s = a.s;
    report.n = x.size();
    report.discrete_value = a.s == 0.0 ? discrete_log(x) : discrete_riesz(x, a.s);

    if (!loaded.metadata_json.empty()) {
        const json meta = json::parse(loaded.metadata_json);
        if (meta.contains("kernel")) {
            const json& kj = meta["kernel"];
            const double n = static_cast<double>(x.size());
            if (kj.is_string() && kj.get<std::string>() == "uniform") {
                // i.i.d. points: every ordered pair contributes V_s
                report.expected_value = a.s == 0.0
                                            ? n * (n - 1.0) * continuous_vlog(x.dim())
                                            : n * (n - 1.0) * continuous_vs(x.dim(), a.s);
            } else if (kj.contains("L")) {
                const int d = kj.at("d").get<int>();
                const int L = kj.at("L").get<int>();
                report.expected_value = a.s == 0.0 ? expected_log_harmonic(d, L)
                                                   : expected_riesz_harmonic(d, L, a.s);
                report.asymptotic_value = harmonic_asymptotic(d, L, a.s);
            } else if (a.s > 0.0) {
                const ProjectionKernel k = ProjectionKernel::from_json(kj.dump());
                report.expected_value = expected_riesz_quadrature(k, a.s);
            }
        }
    }

    a.out.write([&](std::ostream& os) {
        if (a.format == "json") {
            os << report.to_json() << "\n";
            return;
        }
        os << "riesz_s,n,E_discrete,E_expected,E_asymptotic\n";
        os << format_double(report.s) << "," << report.n << ","
           << format_double(report.discrete_value) << ","
           << (report.expected_value ? format_double(*report.expected_value) : "") << ","
           << (report.asymptotic_value ? format_double(*report.asymptotic_value) : "") << "\n";
    });
    return 0;
}

// ---------------------------------------------------------------- expect
struct ExpectArgs {
    int d = 2;
    int L_min = -1, L_max = -1;
    std::optional<int> L;
    std::vector<double> s_values;
    std::string format = "csv";
    OutputTarget out;
};

int run_expect(const ExpectArgs& a) {
    int lo = 0, hi = 0;
    if (a.L) {
        lo = hi = *a.L;
    } else if (a.L_min >= 0 && a.L_max >= a.L_min) {
        lo = a.L_min;
        hi = a.L_max;
    } else {
        throw std::invalid_argument("give --L or a --L-min/--L-max range");
    }
    if (a.s_values.empty()) throw std::invalid_argument("at least one --s is required (0 = log)");

    json rows = json::array();
    a.out.write([&](std::ostream& os) {
        if (a.format == "csv")
            os << "# " << json({{"command", "expect"}, {"d", a.d}}).dump() << "\n"
               << "d,L,n,riesz_s,V_s_continuous,E_expected_closed_form,"
                  "E_expected_quadrature,E_asymptotic\n";
        for (int L = lo; L <= hi; ++L) {
            const HarmonicEnsemble e(a.d, L);
            for (double s : a.s_values) {
                const double n = static_cast<double>(e.point_count());
                double vs = 0.0, closed = 0.0;
                std::optional<double> quad;
                if (s == 0.0) {
                    vs = continuous_vlog(a.d);
                    closed = expected_log_harmonic(a.d, L);
                } else {
                    vs = s < a.d ? continuous_vs(a.d, s) : std::numeric_limits<double>::quiet_NaN();
                    closed = s < a.d ? expected_riesz_harmonic(a.d, L, s)
                                     : expected_riesz_quadrature(e, s);
                    quad = expected_riesz_quadrature(e, s);
                }
                const auto asym = harmonic_asymptotic(a.d, L, s);
                if (a.format == "csv") {
                    os << a.d << "," << L << "," << format_double(n) << "," << format_double(s)
                       << "," << format_double(vs) << "," << format_double(closed) << ","
                       << (quad ? format_double(*quad) : "") << ","
                       << (asym ? format_double(*asym) : "") << "\n";
                } else {
                    json row;
                    row["d"] = a.d;
                    row["L"] = L;
                    row["n"] = e.point_count();
                    row["s"] = s;
                    row["expected"] = closed;
                    if (quad) row["expected_quadrature"] = *quad;
                    if (asym) row["asymptotic"] = *asym;
                    rows.push_back(row);
                }
            }
        }
        if (a.format == "json") os << rows.dump(2) << "\n";
    });
    return 0;
}

// -------------------------------------------------------------- variance
struct VarianceArgs {
    int d = 2;
    int L = 4;
    double measure = 0.3;
    std::uint64_t trials = 2000;
    std::uint64_t seed = 0;
    int nodes = 96;
    std::string format = "csv";
    OutputTarget out;
};

int run_variance(const VarianceArgs& a) {
    const HarmonicEnsemble e(a.d, a.L);
    const CapSpec cap = CapSpec::polar_with_measure(a.d, a.measure);
    const double semianalytic = variance_cap_semianalytic(e, cap, a.nodes);
    const StatReport mc = variance_cap_mc(e, cap, a.trials, {a.seed, 0});
    const double expected_count = static_cast<double>(e.point_count()) * a.measure;

    a.out.write([&](std::ostream& os) {
        if (a.format == "csv") {
            os << "# "
               << json({{"command", "variance"}, {"d", a.d}, {"L", a.L}, {"seed", a.seed}}).dump()
               << "\n";
            os << "d,L,n,cap_measure,E_count,var_semianalytic,var_mc,var_mc_se,trials\n";
            os << a.d << "," << a.L << "," << e.point_count() << "," << format_double(a.measure)
               << "," << format_double(expected_count) << "," << format_double(semianalytic) << ","
               << format_double(mc.estimate) << "," << format_double(*mc.standard_error) << ","
               << a.trials << "\n";
            return;
        }
        json j;
        j["d"] = a.d;
        j["L"] = a.L;
        j["cap_measure"] = a.measure;
        j["expected_count"] = expected_count;
        j["var_semianalytic"] = semianalytic;
        j["var_mc"] = json::parse(mc.to_json());
        os << j.dump(2) << "\n";
    });
    return 0;
}

// ----------------------------------------------------------- discrepancy
struct DiscrepancyArgs {
    int d = 2;
    int L = 8;
    bool uniform = false;
    std::uint64_t trials = 20;
    std::uint64_t probes = 4096;
    std::uint64_t seed = 0;
    OutputTarget out;
};

int run_discrepancy(const DiscrepancyArgs& a) {
    const HarmonicEnsemble e(a.d, a.L);
    const std::uint64_t n = e.point_count();
    std::vector<double> estimates(a.trials);
    parallel_for(a.trials, [&](std::size_t t) {
        const RngStream draw{a.seed, static_cast<std::uint64_t>(t)};
        const RngStream probe{a.seed ^ 0x9e3779b97f4a7c15ull, static_cast<std::uint64_t>(t)};
        const PointConfiguration x =
            a.uniform ? sample_uniform(a.d, n, draw) : sample_dpp(e, draw);
        estimates[t] = discrepancy_estimate(x, a.probes, probe);
    });
    std::vector<double> sorted = estimates;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];

    a.out.write([&](std::ostream& os) {
        os << "# " << json({{"d", a.d},
                            {"L", a.L},
                            {"n", n},
                            {"process", a.uniform ? "uniform" : "harmonic-dpp"},
                            {"probes", a.probes},
                            {"seed", a.seed},
                            {"median_discrepancy", median}})
                          .dump()
           << "\n";
        os << "trial,discrepancy_estimate\n";
        for (std::uint64_t t = 0; t < a.trials; ++t)
            os << t << "," << format_double(estimates[t]) << "\n";
    });
    return 0;
}

// ------------------------------------------------------------ separation
struct SeparationArgs {
    int d = 2;
    int L = 8;
    std::uint64_t trials = 200;
    std::uint64_t seed = 0;
    double t_factor = 0.8; // fraction of the close-pair bound threshold
    OutputTarget out;
};

int run_separation(const SeparationArgs& a) {
    const HarmonicEnsemble e(a.d, a.L);
    const double threshold = (a.d + 6.0) / ((2.0 * a.L + a.d) * a.L);
    const double t = a.t_factor * threshold;
    const double bound = expected_close_pairs_bound(e, t);
    std::vector<double> seps(a.trials);
    std::vector<std::uint64_t> close_counts(a.trials);
    parallel_for(a.trials, [&](std::size_t trial) {
        const PointConfiguration x = sample_dpp(e, {a.seed, static_cast<std::uint64_t>(trial)});
        seps[trial] = separation(x);
        close_counts[trial] = close_pair_count(x, t);
    });
    double mean_g = 0.0;
    for (auto c : close_counts) mean_g += static_cast<double>(c);
    mean_g /= static_cast<double>(a.trials);

    a.out.write([&](std::ostream& os) {
        os << "# " << json({{"d", a.d},
                            {"L", a.L},
                            {"n", e.point_count()},
                            {"t", t},
                            {"close_pair_bound", bound},
                            {"close_pair_mc_mean", mean_g},
                            {"seed", a.seed}})
                          .dump()
           << "\n";
        os << "trial,separation,close_pairs_at_t\n";
        for (std::uint64_t trial = 0; trial < a.trials; ++trial)
            os << trial << "," << format_double(seps[trial]) << "," << close_counts[trial] << "\n";
    });
    return 0;
}

// ------------------------------------------------------- compare-kernels
struct CompareArgs {
    int d = 4;
    std::uint64_t n = 0;
    std::uint64_t n_max = 0;
    int max_degree = 12;
    OutputTarget out;
};

int run_compare(const CompareArgs& a) {
    if ((a.n == 0) == (a.n_max == 0))
        throw std::invalid_argument("give exactly one of --n or --n-max");
    if (a.d < 3) throw std::invalid_argument("2-energy comparison requires d >= 3");

    a.out.write([&](std::ostream& os) {
        os << "# "
           << json({{"command", "compare-kernels"}, {"d", a.d}, {"max_degree", a.max_degree}})
                  .dump()
           << "\n";
        os << "n,degrees,quadratic_form_F,E2_expected,is_harmonic\n";
        const std::uint64_t lo = a.n ? a.n : 1;
        const std::uint64_t hi = a.n ? a.n : a.n_max;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const KernelEnumeration family = enumerate_projection_kernels(a.d, n, a.max_degree);
            if (family.truncated) {
                os << "# n=" << n << ": " << family.count
                   << " kernels exceed the enumeration cap; skipped\n";
                continue;
            }
            for (const auto& k : family.kernels) {
                json degrees = k.degrees();
                os << n << ",\"" << degrees.dump() << "\"," << format_double(kernel_quadratic_form(k))
                   << "," << format_double(expected_e2_closed_form(k)) << ","
                   << (k.is_harmonic() ? 1 : 0) << "\n";
            }
        }
    });
    return 0;
}

// --------------------------------------------------------------- fig-data
struct FigDataArgs {
    std::string which = "constants";
    double s_min = 0.1;
    double s_max = 1.9;
    int steps = 64;
    OutputTarget out;
};

int run_fig_data(const FigDataArgs& a) {
    if (a.which != "constants")
        throw std::invalid_argument("unknown fig-data set: " + a.which);
    if (a.steps < 2) throw std::invalid_argument("--steps must be >= 2");
    if (!(a.s_min > 0.0) || !(a.s_max > a.s_min) || !(a.s_max < 2.0))
        throw std::invalid_argument("constants curves need 0 < s-min < s-max < 2");
    a.out.write([&](std::ostream& os) {
        os << "# " << json({{"command", "fig-data"}, {"set", a.which}}).dump() << "\n";
        os << "s,C_s2_harmonic,C_s2_spherical_ensemble\n";
        for (int i = 0; i < a.steps; ++i) {
            const double s = a.s_min + (a.s_max - a.s_min) * i / (a.steps - 1.0);
            const double green = asymptotic_riesz_constant(2, s);
            const double red = std::pow(2.0, -s) * gamma_signed(1.0 - 0.5 * s);
            os << format_double(s) << "," << format_double(green) << "," << format_double(red)
               << "\n";
        }
    });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"determinantal point processes on spheres: sampling, energies, statistics"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = hardware)")
        ->envname("SPHERE_DPP_THREADS");

    SampleArgs sample;
    auto* cmd_sample = app.add_subcommand("sample", "draw a point configuration");
    cmd_sample->add_option("--d", sample.d, "sphere dimension")->required();
    cmd_sample->add_option("--L", sample.L, "harmonic ensemble max degree");
    cmd_sample->add_option("--kernel", sample.kernel_path, "projection kernel JSON file");
    cmd_sample->add_flag("--uniform", sample.uniform, "i.i.d. uniform baseline");
    cmd_sample->add_option("--n", sample.n, "point count for --uniform");
    cmd_sample->add_option("--seed", sample.seed, "RNG seed")->required();
    cmd_sample->add_option("--stream", sample.stream, "RNG stream id");
    cmd_sample->add_option("-o,--output", sample.out.path, "output CSV (default stdout)");

    EnergyArgs energy;
    auto* cmd_energy = app.add_subcommand("energy", "discrete energy of a stored configuration");
    cmd_energy->add_option("--input", energy.input, "points CSV")->required();
    cmd_energy->add_option("--s", energy.s, "Riesz exponent (0 = logarithmic)")->required();
    cmd_energy->add_option("--format", energy.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_energy->add_option("-o,--output", energy.out.path, "output file");

    ExpectArgs expect;
    auto* cmd_expect = app.add_subcommand("expect", "closed-form expected energies");
    cmd_expect->add_option("--d", expect.d, "sphere dimension")->required();
    cmd_expect->add_option("--L", expect.L, "single max degree");
    cmd_expect->add_option("--L-min", expect.L_min, "sweep start");
    cmd_expect->add_option("--L-max", expect.L_max, "sweep end");
    cmd_expect->add_option("--s", expect.s_values, "Riesz exponents (0 = log)")->required();
    cmd_expect->add_option("--format", expect.format, "csv|json")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_expect->add_option("-o,--output", expect.out.path, "output file");

    VarianceArgs variance;
    auto* cmd_variance = app.add_subcommand("variance", "cap-count variance: MC vs semianalytic");
    cmd_variance->add_option("--d", variance.d)->required();
    cmd_variance->add_option("--L", variance.L)->required();
    cmd_variance->add_option("--measure", variance.measure, "cap measure in (0,1)");
    cmd_variance->add_option("--trials", variance.trials);
    cmd_variance->add_option("--seed", variance.seed)->required();
    cmd_variance->add_option("--nodes", variance.nodes, "quadrature nodes per axis");
    cmd_variance->add_option("--format", variance.format)->check(CLI::IsMember({"json", "csv"}));
    cmd_variance->add_option("-o,--output", variance.out.path);

    DiscrepancyArgs discrepancy;
    auto* cmd_disc = app.add_subcommand("discrepancy", "spherical-cap discrepancy estimates");
    cmd_disc->add_option("--d", discrepancy.d)->required();
    cmd_disc->add_option("--L", discrepancy.L)->required();
    cmd_disc->add_flag("--uniform", discrepancy.uniform, "uniform baseline at n = pi_L");
    cmd_disc->add_option("--trials", discrepancy.trials);
    cmd_disc->add_option("--probes", discrepancy.probes);
    cmd_disc->add_option("--seed", discrepancy.seed)->required();
    cmd_disc->add_option("-o,--output", discrepancy.out.path);

    SeparationArgs separation_args;
    auto* cmd_sep = app.add_subcommand("separation", "separation distance and close pairs");
    cmd_sep->add_option("--d", separation_args.d)->required();
    cmd_sep->add_option("--L", separation_args.L)->required();
    cmd_sep->add_option("--trials", separation_args.trials);
    cmd_sep->add_option("--seed", separation_args.seed)->required();
    cmd_sep->add_option("--t-factor", separation_args.t_factor,
                        "close-pair radius as a fraction of the bound threshold");
    cmd_sep->add_option("-o,--output", separation_args.out.path);

    CompareArgs compare;
    auto* cmd_compare = app.add_subcommand("compare-kernels", "2-energy across kernels of one trace");
    cmd_compare->add_option("--d", compare.d)->required();
    cmd_compare->add_option("--n", compare.n, "single trace value");
    cmd_compare->add_option("--n-max", compare.n_max, "sweep all traces up to this");
    cmd_compare->add_option("--max-degree", compare.max_degree);
    cmd_compare->add_option("-o,--output", compare.out.path);

    FigDataArgs fig;
    auto* cmd_fig = app.add_subcommand("fig-data", "asymptotic-constant curves");
    cmd_fig->add_option("set", fig.which, "data set name (constants)");
    cmd_fig->add_option("--s-min", fig.s_min);
    cmd_fig->add_option("--s-max", fig.s_max);
    cmd_fig->add_option("--steps", fig.steps);
    cmd_fig->add_option("-o,--output", fig.out.path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    set_thread_count(threads);
    try {
        if (cmd_sample->parsed()) return run_sample(sample);
        if (cmd_energy->parsed()) return run_energy(energy);
        if (cmd_expect->parsed()) return run_expect(expect);
        if (cmd_variance->parsed()) return run_variance(variance);
        if (cmd_disc->parsed()) return run_discrepancy(discrepancy);
        if (cmd_sep->parsed()) return run_separation(separation_args);
        if (cmd_compare->parsed()) return run_compare(compare);
        if (cmd_fig->parsed()) return run_fig_data(fig);
        std::cerr << "no subcommand given\n";
        return kExitUsage;
    } catch (const SamplerStallError& e) {
        std::cerr << "sampler stall: " << e.what() << "\n";
        return kExitSamplerStall;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
