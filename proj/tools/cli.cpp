#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "smoothwave/additive.hpp"
#include "smoothwave/bound_lab.hpp"
#include "smoothwave/errors.hpp"
#include "smoothwave/expsum.hpp"
#include "smoothwave/manifest.hpp"
#include "smoothwave/primes.hpp"
#include "smoothwave/registry.hpp"
#include "smoothwave/saddle.hpp"
#include "smoothwave/smooth_core.hpp"
#include "smoothwave/verify.hpp"
#include "smoothwave/version.hpp"

namespace smoothwave::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
    uint64_t x = 0;
    uint64_t y = 0;
    uint64_t q = 1;
    double delta = 0.0;
    double p = 2.0;
    double u = 0.0;
    double theta = 0.0;
    double beta = 1.0;
    double threshold = 0.5;  // largevalues delta
    uint64_t grid = 0;
    uint64_t arcs_r = 0;
    uint64_t seed = 0;
    std::string out;
    std::string in;
    std::string format = "json";
    std::string mode = "definition";
    std::string select = "full";
    std::string bfile;
    std::string weights_file;
    std::string suite = "fast";
    std::string out_dir = "verify-out";
};

std::string fmt(double v) { return format_double(v); }

// Manifest written alongside --out artifacts; wall time is the only
// non-reproducible field and lives here, never in the primary output.
class ManifestScope {
public:
    ManifestScope(std::string command, const Options& opt) : start_(clock_t::now()) {
        m_.command = std::move(command);
        m_.seed = opt.seed;
        m_.tool_version = kToolVersion;
    }
    void param(const std::string& k, const std::string& v) { m_.parameters[k] = v; }
    void artifact(const std::string& path) { m_.artifacts.push_back(path); }
    void write_if(const std::string& out) {
        if (out.empty()) return;
        m_.wall_time_s =
            std::chrono::duration<double>(clock_t::now() - start_).count();
        write_manifest(m_, out + ".manifest.json");
    }
    void write_to(const std::string& path) {
        m_.wall_time_s =
            std::chrono::duration<double>(clock_t::now() - start_).count();
        write_manifest(m_, path);
    }

private:
    using clock_t = std::chrono::steady_clock;
    RunManifest m_;
    clock_t::time_point start_;
};

SmoothSet load_or_sieve(const Options& opt) {
    if (!opt.in.empty()) return read_smbm(opt.in);
    return sieve_smooth(opt.x, opt.y);
}

std::vector<cdouble> read_weights_file(const std::string& path, uint64_t x) {
    std::ifstream f(path);
    if (!f) throw_invalid("cannot open weights file " + path);
    std::vector<cdouble> w;
    w.reserve(x + 1);
    std::string line;
    while (std::getline(f, line) && w.size() <= x) {
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        ss >> re;
        ss >> im;  // optional second column
        w.emplace_back(re, im);
    }
    w.resize(x + 1, cdouble{0.0, 0.0});
    return w;
}

int cmd_sieve(const Options& opt) {
    ManifestScope man("sieve", opt);
    man.param("x", std::to_string(opt.x));
    man.param("y", std::to_string(opt.y));
    SmoothSet set = sieve_smooth(opt.x, opt.y);
    if (!opt.out.empty()) {
        write_smbm(set, opt.out);
        man.artifact(opt.out);
    }
    std::cout << set.psi << "\n";
    man.write_if(opt.out);
    return 0;
}

int cmd_psi(const Options& opt) {
    SmoothSet set = load_or_sieve(opt);
    std::cout << set.psi << "\n";
    return 0;
}

int cmd_alpha(const Options& opt) {
    SaddlePoint sp = solve_alpha(static_cast<double>(opt.x), opt.y, 1e-12);
    ordered_json j;
    j["input"] = {{"x", opt.x}, {"y", opt.y}};
    j["value"] = sp.alpha;
    j["residual"] = sp.residual;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_rho(const Options& opt) {
    DickmanTable coarse = build_dickman_table();
    DickmanTable fine = build_dickman_table(coarse.h / 2.0, coarse.u_max);
    double v = coarse.rho(opt.u);
    ordered_json j;
    j["input"] = {{"u", opt.u}};
    j["value"] = v;
    j["residual"] = std::abs(v - fine.rho(opt.u));
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_psi_est(const Options& opt) {
    SaddlePoint sp = solve_alpha(static_cast<double>(opt.x), opt.y, 1e-12);
    ordered_json j;
    j["input"] = {{"x", opt.x}, {"y", opt.y}};
    j["value"] = ht_estimate(static_cast<double>(opt.x), opt.y);
    j["residual"] = sp.residual;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_expsum(const Options& opt, bool grid_mode) {
    ManifestScope man("expsum", opt);
    man.param("x", std::to_string(opt.x));
    man.param("y", std::to_string(opt.y));
    SmoothSet set = load_or_sieve(opt);
    if (!grid_mode) {
        cdouble v = exp_sum(set, opt.theta);
        ordered_json j;
        j["input"] = {{"x", set.x}, {"y", set.y}, {"theta", opt.theta}};
        j["re"] = v.real();
        j["im"] = v.imag();
        j["abs"] = std::abs(v);
        std::cout << j.dump() << "\n";
        return 0;
    }
    man.param("grid", std::to_string(opt.grid));
    ExpSumGrid grid = exp_sum_grid(set, next_pow2(opt.grid));
    std::string csv = "a,re,im,abs\n";
    for (uint64_t a = 0; a < grid.n_grid; ++a) {
        const cdouble& v = grid.values[a];
        csv += std::to_string(a) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "," +
               fmt(std::abs(v)) + "\n";
    }
    if (opt.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) throw_invalid("cannot write " + opt.out);
        f << csv;
        man.artifact(opt.out);
        std::cout << "wrote " << grid.n_grid << " rows to " << opt.out << "\n";
    }
    man.write_if(opt.out);
    return 0;
}

int cmd_varc(const Options& opt) {
    SmoothSet set = load_or_sieve(opt);
    ordered_json j;
    j["input"] = {{"x", set.x}, {"y", set.y}, {"q", opt.q}, {"delta", opt.delta}};
    cdouble def, dec;
    bool both = opt.mode == "both";
    if (both || opt.mode == "definition") {
        def = v_major(set, opt.q, opt.delta, VMode::Definition);
        j["definition"] = {{"re", def.real()}, {"im", def.imag()}};
    }
    if (both || opt.mode == "decomposed") {
        dec = v_major(set, opt.q, opt.delta, VMode::Decomposed);
        j["decomposed"] = {{"re", dec.real()}, {"im", dec.imag()}};
    }
    if (both) j["mode_gap"] = std::abs(def - dec);
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_moment(const Options& opt) {
    SmoothSet set = load_or_sieve(opt);
    std::vector<cdouble> weights;
    if (!opt.weights_file.empty()) weights = read_weights_file(opt.weights_file, set.x);
    MomentEstimate m = moment(set, opt.p, weights, opt.grid);
    ordered_json j;
    j["input"] = {{"x", set.x}, {"y", set.y}, {"p", opt.p}};
    j["value"] = m.value;
    j["n_grid"] = m.n_grid;
    j["exact"] = m.exact;
    j["refinement_gap"] = m.refinement_gap;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_abc(const Options& opt) {
    ManifestScope man("abc", opt);
    man.param("x", std::to_string(opt.x));
    man.param("y", std::to_string(opt.y));
    man.param("method", opt.mode);
    SmoothSet set = load_or_sieve(opt);
    CountMethod method =
        opt.mode == "bruteforce" ? CountMethod::BruteForce : CountMethod::Convolution;
    AbcCount c = abc_count(set, method);
    if (opt.format == "csv") {
        std::string csv = "x,y,exact,predicted,ratio,method\n";
        csv += std::to_string(c.x) + "," + std::to_string(c.y) + "," + std::to_string(c.exact) +
               "," + fmt(c.predicted) + "," + fmt(c.ratio) + "," +
               (c.method == CountMethod::Convolution ? "convolution" : "bruteforce") + "\n";
        if (opt.out.empty()) {
            std::cout << csv;
        } else {
            std::ofstream f(opt.out, std::ios::binary);
            f << csv;
            man.artifact(opt.out);
        }
    } else {
        ordered_json j;
        j["x"] = c.x;
        j["y"] = c.y;
        j["exact"] = c.exact;
        j["predicted"] = c.predicted;
        j["ratio"] = c.ratio;
        j["method"] = c.method == CountMethod::Convolution ? "convolution" : "bruteforce";
        std::cout << j.dump() << "\n";
    }
    man.write_if(opt.out);
    return 0;
}

int cmd_roth(const Options& opt) {
    RothSelector sel = RothSelector::Full;
    if (opt.select == "prefix") sel = RothSelector::Prefix;
    if (opt.select == "random") sel = RothSelector::Random;
    std::vector<uint32_t> explicit_b;
    const std::vector<uint32_t>* bptr = nullptr;
    if (opt.select == "file") {
        std::ifstream f(opt.bfile);
        if (!f) throw_invalid("cannot open B file " + opt.bfile);
        uint64_t n;
        while (f >> n) explicit_b.push_back(static_cast<uint32_t>(n));
        bptr = &explicit_b;
    }
    RothReport r = roth_experiment(opt.x, opt.y, sel, opt.beta, opt.seed, bptr);
    if (opt.format == "csv") {
        std::string csv =
            "x,y,beta,b_size,ap_count,ap_count_mod_n,eta,moment_m,n_modulus,"
            "lower_bound_scale,transference_ratio\n";
        csv += std::to_string(opt.x) + "," + std::to_string(opt.y) + "," + fmt(opt.beta) + "," +
               std::to_string(r.b_size) + "," + std::to_string(r.ap_count) + "," +
               std::to_string(r.ap_count_mod_n) + "," + fmt(r.eta) + "," + fmt(r.moment_m) + "," +
               std::to_string(r.n_modulus) + "," + fmt(r.lower_bound_scale) + "," +
               fmt(r.transference_ratio) + "\n";
        if (opt.out.empty()) {
            std::cout << csv;
        } else {
            std::ofstream f(opt.out, std::ios::binary);
            f << csv;
        }
        return 0;
    }
    ordered_json j;
    j["input"] = {{"x", opt.x}, {"y", opt.y}, {"beta", opt.beta}, {"select", opt.select}};
    j["b_size"] = r.b_size;
    j["ap_count"] = r.ap_count;
    j["ap_count_mod_n"] = r.ap_count_mod_n;
    j["eta"] = r.eta;
    j["moment_m"] = r.moment_m;
    j["n_modulus"] = r.n_modulus;
    j["lower_bound_scale"] = r.lower_bound_scale;
    j["transference_ratio"] = r.transference_ratio;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_scan(const Options& opt) {
    ManifestScope man("scan", opt);
    SmoothSet set = load_or_sieve(opt);
    uint64_t cap = major_arc_cap(set.x);
    uint64_t r_arcs = opt.arcs_r == 0 ? cap : opt.arcs_r;
    if (r_arcs > cap) {
        std::cerr << "note: R capped to " << cap << " to keep the arc measure below 1/2\n";
        r_arcs = cap;
    }
    uint64_t grid_n = opt.grid == 0 ? next_pow2(set.x + 1) : next_pow2(opt.grid);
    ScanReport rep = minor_arc_scan(set, r_arcs, grid_n);
    man.param("x", std::to_string(set.x));
    man.param("y", std::to_string(set.y));
    man.param("R", std::to_string(r_arcs));
    man.param("grid", std::to_string(grid_n));
    if (!opt.out.empty()) {
        write_records_csv(opt.out, {rep.record});
        man.artifact(opt.out);
    }
    ordered_json j;
    j["max_offarc_over_psi"] = rep.record.lhs;
    j["one_over_log5x"] = rep.record.rhs;
    j["ratio"] = rep.record.ratio;
    j["top20_inside_major"] = rep.top20_inside_major;
    j["R"] = r_arcs;
    j["grid"] = grid_n;
    std::cout << j.dump() << "\n";
    man.write_if(opt.out);
    return 0;
}

int cmd_largevalues(const Options& opt) {
    ManifestScope man("largevalues", opt);
    SmoothSet set = load_or_sieve(opt);
    uint64_t grid_n = opt.grid == 0 ? next_pow2(2 * set.x + 1) : next_pow2(opt.grid);
    LargeValuesReport rep = large_values_count(set, {}, opt.threshold, grid_n);
    if (!opt.out.empty()) {
        // One verification row per bound shape, R on the left-hand side.
        std::map<std::string, double> base = {{"x", double(set.x)},
                                              {"y", double(set.y)},
                                              {"delta", opt.threshold},
                                              {"grid_n", double(grid_n)}};
        auto small_row = base, large_row = base;
        small_row["bound_id"] = 1.0;
        large_row["bound_id"] = 2.0;
        write_records_csv(opt.out,
                          {make_record(small_row, double(rep.r_count), rep.bound_smalldelta, true),
                           make_record(large_row, double(rep.r_count), rep.bound_largedelta, true)});
        man.artifact(opt.out);
    }
    ordered_json j;
    j["input"] = {{"x", set.x}, {"y", set.y}, {"delta", opt.threshold}, {"grid", grid_n}};
    j["R"] = rep.r_count;
    j["K_reference"] = rep.k_reference;
    j["bound_smalldelta"] = rep.bound_smalldelta;
    j["bound_largedelta"] = rep.bound_largedelta;
    j["alpha"] = rep.alpha;
    j["thetas"] = rep.thetas;
    std::cout << j.dump() << "\n";
    man.write_if(opt.out);
    return 0;
}

int cmd_bounds(const Options& opt) {
    ManifestScope man("bounds", opt);
    SmoothSet set = load_or_sieve(opt);
    SaddlePoint sp = solve_alpha(static_cast<double>(set.x), set.y, 1e-12);
    std::vector<VerificationRecord> recs;

    // minor-arc bound shape against |S| at a = 1 (a = 0 for q = 1).
    MinorArcBound t1 = minor_arc_bound(static_cast<double>(set.x), set.y, opt.q, opt.delta, sp.alpha,
                            static_cast<double>(set.psi));
    double theta = (opt.q == 1 ? 0.0 : 1.0 / static_cast<double>(opt.q)) + opt.delta;
    double mag = std::abs(exp_sum(set, theta));
    recs.push_back(make_record({{"x", double(set.x)},
                                {"y", double(set.y)},
                                {"q", double(opt.q)},
                                {"delta", opt.delta},
                                {"bound_id", 1.0}},
                               mag, t1.value, t1.hypothesis_ok));

    if (3.0 <= double(set.y) && double(set.y) <= std::sqrt(double(set.x))) {
        double ft = ft_minor_bound(static_cast<double>(set.x), set.y, opt.q, opt.delta);
        recs.push_back(make_record({{"x", double(set.x)},
                                    {"y", double(set.y)},
                                    {"q", double(opt.q)},
                                    {"delta", opt.delta},
                                    {"bound_id", 2.0}},
                                   mag, ft, true));
    }
    recs.push_back([&] {
        VerificationRecord r = major_arc_compare(set, opt.q, opt.delta, sp.alpha);
        r.params["bound_id"] = 3.0;
        return r;
    }());

    std::string csv = records_to_csv(recs);
    if (opt.out.empty()) {
        std::cout << csv;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        f << csv;
        man.artifact(opt.out);
        std::cout << "wrote " << recs.size() << " rows to " << opt.out << "\n";
    }
    man.write_if(opt.out);
    return 0;
}

int cmd_verify(const Options& opt) {
    ManifestScope man("verify", opt);
    man.param("suite", opt.suite);
    CalibrationRegistry reg = CalibrationRegistry::load_or_bootstrap(
        CalibrationRegistry::default_path());
    SuiteMode mode = opt.suite == "full" ? SuiteMode::Full : SuiteMode::Fast;
    auto results = run_verify(mode, reg, opt.out_dir, opt.seed);
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        std::cout << (r.pass ? "ok   " : "FAIL ") << r.id;
        if (!r.note.empty()) std::cout << "  [" << r.note << "]";
        std::cout << "\n";
        if (!r.csv_path.empty()) man.artifact(r.csv_path);
    }
    std::cout << (all ? "verify: all suites passed" : "verify: FAILURES above") << "\n";
    man.write_to(opt.out_dir + "/manifest.json");
    return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"smoothwave: smooth-number exponential sums, circle-method counts, and "
                 "calibrated bound checks"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* sub, bool need_x = true) {
        if (need_x) sub->add_option("--x", opt.x, "upper bound x")->required();
        sub->add_option("--y", opt.y, "smoothness bound y");
        sub->add_option("--seed", opt.seed, "seed for randomized pieces");
        sub->add_option("--format", opt.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", opt.out, "output file (manifest written alongside)");
        sub->add_option("--in", opt.in, "read the smooth set from an SMBM bitmap");
        return sub;
    };

    auto* c_sieve = add_common(app.add_subcommand("sieve", "sieve S(y) n [1,x], write SMBM"));
    auto* c_psi = add_common(app.add_subcommand("psi", "print Psi(x,y)"));
    auto* c_alpha = add_common(app.add_subcommand("alpha", "saddle point alpha(x,y)"));
    auto* c_rho = app.add_subcommand("rho", "Dickman rho(u)");
    c_rho->add_option("--u", opt.u, "argument u")->required();
    auto* c_est = add_common(app.add_subcommand("psi-est", "Hildebrand-Tenenbaum estimate"));
    auto* c_exp = add_common(app.add_subcommand("expsum", "S(theta) or a full FFT grid"));
    c_exp->add_option("--theta", opt.theta, "single evaluation point");
    c_exp->add_option("--grid", opt.grid, "grid size N (rounded up to a power of two)");
    auto* c_varc = add_common(app.add_subcommand("varc", "major-arc model V(x,y;q,delta)"));
    c_varc->add_option("--q", opt.q, "modulus q");
    c_varc->add_option("--delta", opt.delta, "offset delta");
    c_varc->add_option("--mode", opt.mode, "definition|decomposed|both")
        ->check(CLI::IsMember({"definition", "decomposed", "both"}));
    auto* c_mom = add_common(app.add_subcommand("moment", "L^p moment of S"));
    c_mom->add_option("--p", opt.p, "exponent p >= 2")->required();
    c_mom->add_option("--grid", opt.grid, "grid size override");
    c_mom->add_option("--weights", opt.weights_file, "one weight per line (re [im])");
    auto* c_abc = add_common(app.add_subcommand("abc", "count a+b=c in smooth numbers"));
    c_abc->add_option("--method", opt.mode, "convolution|bruteforce")
        ->check(CLI::IsMember({"convolution", "bruteforce"}));
    auto* c_roth = add_common(app.add_subcommand("roth", "transference experiment"));
    c_roth->add_option("--beta", opt.beta, "density parameter in (0,1]")->required();
    c_roth->add_option("--select", opt.select, "full|prefix|random|file")
        ->check(CLI::IsMember({"full", "prefix", "random", "file"}));
    c_roth->add_option("--bfile", opt.bfile, "file of B members for --select file");
    auto* c_scan = add_common(app.add_subcommand("scan", "minor-arc grid scan"));
    c_scan->add_option("--R", opt.arcs_r, "arc parameter R (0 = automatic cap)");
    c_scan->add_option("--grid", opt.grid, "grid size N");
    auto* c_lv = add_common(app.add_subcommand("largevalues", "1/x-separated large values"));
    c_lv->add_option("--delta", opt.threshold, "threshold fraction of Psi")->required();
    c_lv->add_option("--grid", opt.grid, "grid size N");
    auto* c_bounds = add_common(app.add_subcommand("bounds", "explicit bound evaluations"));
    c_bounds->add_option("--q", opt.q, "modulus q");
    c_bounds->add_option("--delta", opt.delta, "offset delta");
    auto* c_verify = app.add_subcommand("verify", "run the invariant suites");
    c_verify->add_option("--suite", opt.suite, "fast|full")
        ->check(CLI::IsMember({"fast", "full"}));
    c_verify->add_option("--out-dir", opt.out_dir, "directory for CSV reports");
    c_verify->add_option("--seed", opt.seed, "seed for randomized suites");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        std::cout << kToolVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(c_sieve)) return cmd_sieve(opt);
        if (app.got_subcommand(c_psi)) return cmd_psi(opt);
        if (app.got_subcommand(c_alpha)) return cmd_alpha(opt);
        if (app.got_subcommand(c_rho)) return cmd_rho(opt);
        if (app.got_subcommand(c_est)) return cmd_psi_est(opt);
        if (app.got_subcommand(c_exp)) return cmd_expsum(opt, c_exp->count("--grid") > 0);
        if (app.got_subcommand(c_varc)) return cmd_varc(opt);
        if (app.got_subcommand(c_mom)) return cmd_moment(opt);
        if (app.got_subcommand(c_abc)) return cmd_abc(opt);
        if (app.got_subcommand(c_roth)) return cmd_roth(opt);
        if (app.got_subcommand(c_scan)) return cmd_scan(opt);
        if (app.got_subcommand(c_lv)) return cmd_largevalues(opt);
        if (app.got_subcommand(c_bounds)) return cmd_bounds(opt);
        if (app.got_subcommand(c_verify)) return cmd_verify(opt);
        std::cerr << "unknown subcommand\n";
        return 2;
    } catch (const Error& e) {
        ordered_json j;
        j["error"] = error_kind_name(e.kind());
        j["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        ordered_json j;
        j["error"] = "internal";
        j["message"] = e.what();
        std::cerr << j.dump() << "\n";
        return 1;
    }
}

}  // namespace smoothwave::cli
