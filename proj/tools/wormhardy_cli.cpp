// Command-line front end: kernel evaluation, projection runs, Paley-Wiener
// synthesis, verification suites, beta sweeps and convergence tables.
//
// Configuration comes from --config (JSON with keys beta, L, Nx, Nj, tol,
// seed, p_list, output_dir) with explicit flags taking precedence.  Exit
// codes: 0 success, 1 verification failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wormhardy/wormhardy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wormhardy;

namespace {

struct CommonOpts {
    std::string config_path;
    std::optional<double> beta, L, tol;
    std::optional<int> nx, nj;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<double>> p_list;
    std::optional<std::string> output_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--beta", o.beta, "domain parameter beta (> pi/2)");
    cmd->add_option("--L", o.L, "half-length of the x window");
    cmd->add_option("--nx", o.nx, "x samples (power of two)");
    cmd->add_option("--nj", o.nj, "torus modes kept (|j| <= Nj)");
    cmd->add_option("--tol", o.tol, "series / quadrature tolerance");
    cmd->add_option("--seed", o.seed, "PRNG seed");
    cmd->add_option("--p-list", o.p_list, "L^p exponents")->delimiter(',');
    cmd->add_option("--out", o.output_dir, "output directory");
}

RunConfig resolve(const CommonOpts& o) {
    RunConfig rc;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw io_error("cannot open config: " + o.config_path);
        const json j = json::parse(in);
        rc.beta = j.value("beta", rc.beta);
        rc.L = j.value("L", rc.L);
        rc.nx = j.value("Nx", rc.nx);
        rc.nj = j.value("Nj", rc.nj);
        rc.tol = j.value("tol", rc.tol);
        rc.seed = j.value("seed", rc.seed);
        if (j.contains("p_list")) rc.p_list = j["p_list"].get<std::vector<double>>();
        rc.output_dir = j.value("output_dir", rc.output_dir);
    }
    if (o.beta) rc.beta = *o.beta;
    if (o.L) rc.L = *o.L;
    if (o.nx) rc.nx = *o.nx;
    if (o.nj) rc.nj = *o.nj;
    if (o.tol) rc.tol = *o.tol;
    if (o.seed) rc.seed = *o.seed;
    if (o.p_list) rc.p_list = *o.p_list;
    if (o.output_dir) rc.output_dir = *o.output_dir;
    validate_params(rc.beta);
    (void)rc.grid();
    fs::create_directories(rc.output_dir);
    return rc;
}

BoundaryData load_boundary(const RunConfig& rc, const std::array<std::string, 4>& paths) {
    const GridSpec g = rc.grid();
    BoundaryData phi = make_boundary_data(g);
    for (int l = 0; l < 4; ++l) phi.comp[std::size_t(l)] = read_field_csv(paths[std::size_t(l)], g);
    return phi;
}

int cmd_kernel_eval(const RunConfig& rc, const std::vector<double>& wv,
                    const std::vector<double>& zv) {
    const auto p = validate_params(rc.beta);
    if (wv.size() != 4) throw param_out_of_range("--w expects re,im,s,gamma");
    if (zv.size() != 3) throw param_out_of_range("--zeta expects component,x,gamma");
    const int comp = int(zv[0]);
    if (comp < 1 || comp > 4) throw param_out_of_range("--zeta component must be 1..4");
    const InteriorPoint w{cplx(wv[0], wv[1]), wv[2], wv[3]};
    const BoundaryPoint zeta{all_components[std::size_t(comp - 1)], zv[1], zv[2]};

    std::vector<KernelTraceRow> trace;
    const auto res = szego_kernel(p, w, zeta, rc.tol, &trace);

    const fs::path out = fs::path(rc.output_dir) / "kernel_eval.csv";
    std::ofstream f(out);
    f << "j,re_kj,im_kj,partial_sum_re,partial_sum_im,tail_bound\n";
    for (const auto& row : trace)
        f << row.j << ',' << fmt17(row.kj.real()) << ',' << fmt17(row.kj.imag()) << ','
          << fmt17(row.partial_sum.real()) << ',' << fmt17(row.partial_sum.imag()) << ','
          << fmt17(row.tail_bound) << '\n';
    std::cout << "K = " << fmt17(res.value.real()) << " + " << fmt17(res.value.imag())
              << "i  (modes " << res.j_min << ".." << res.j_max
              << ", certified tail " << fmt17(res.tail_bound) << ")\n"
              << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_project(const RunConfig& rc, const std::array<std::string, 4>& paths, double y, double s) {
    const auto p = validate_params(rc.beta);
    const BoundaryData phi = load_boundary(rc, paths);
    const SampledField out = project_interior(p, phi, y, s);
    const fs::path path = fs::path(rc.output_dir) / "projection.csv";
    write_field_csv(path.string(), out);
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_boundary_project(const RunConfig& rc, const std::array<std::string, 4>& paths) {
    const auto p = validate_params(rc.beta);
    const BoundaryData out = boundary_szego(p, load_boundary(rc, paths));
    for (int l = 0; l < 4; ++l) {
        const fs::path path =
            fs::path(rc.output_dir) / ("boundary_E" + std::to_string(l + 1) + ".csv");
        write_field_csv(path.string(), out.comp[std::size_t(l)]);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_synthesize(const RunConfig& rc, const std::string& modes_path) {
    const auto p = validate_params(rc.beta);
    const GridSpec g = rc.grid();
    const ModeCoefficients mc = read_modes_csv(modes_path, g.xgrid());
    const BoundaryData phi = pw_worm_synthesize(p, mc, g);
    for (int l = 0; l < 4; ++l) {
        const fs::path path = fs::path(rc.output_dir) / ("synth_E" + std::to_string(l + 1) + ".csv");
        write_field_csv(path.string(), phi.comp[std::size_t(l)]);
        std::cout << "wrote " << path.string() << "\n";
    }
    return 0;
}

int cmd_verify(const RunConfig& rc, const std::string& suite) {
    const auto results = run_checks(suite, rc);
    if (results.empty()) throw param_out_of_range("verify: no checks match suite '" + suite + "'");
    const std::string report = render_report_json(rc, results);
    const fs::path path = fs::path(rc.output_dir) / "report.json";
    std::ofstream f(path);
    f << report;
    std::cout << report;
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

int cmd_sweep(const RunConfig& rc, const std::string& range, const std::string& check) {
    double lo = 0, hi = 0;
    int n = 0;
    if (std::sscanf(range.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
        throw param_out_of_range("--beta-range expects lo:hi:n");
    std::cout << "beta,check,status,measured,tolerance\n";
    bool all_pass = true;
    for (int i = 0; i < n; ++i) {
        RunConfig cfg = rc;
        cfg.beta = (n == 1) ? lo : lo + (hi - lo) * double(i) / (n - 1);
        if (!(cfg.beta > pi / 2)) continue;
        for (const auto& r : run_checks(check, cfg)) {
            all_pass = all_pass && r.pass;
            std::cout << fmt17(cfg.beta) << ',' << r.name << ',' << (r.pass ? "pass" : "fail")
                      << ',' << fmt17(r.measured) << ',' << fmt17(r.tolerance) << "\n";
        }
    }
    return all_pass ? 0 : 1;
}

int cmd_convergence(const RunConfig& rc, const std::string& kind, const std::string& modes_path,
                    double pnorm) {
    const auto p = validate_params(rc.beta);
    const GridSpec g = rc.grid();

    ModeCoefficients mc;
    mc.grid = g.xgrid();
    if (modes_path.empty()) {
        mc.g[0] = checks::gaussian_profile(mc.grid);
    } else {
        mc = read_modes_csv(modes_path, g.xgrid());
    }

    const fs::path path = fs::path(rc.output_dir) / ("convergence_" + kind + ".csv");
    std::ofstream f(path);
    if (kind == "growth") {
        std::vector<ApproachParams> pts;
        for (int i = 0; i < 6; ++i)
            for (int q = 0; q < 6; ++q)
                pts.push_back({0.95 * (pi / 2) * i / 5.0, 0.95 * p.half_strip * q / 5.0});
        const auto prof = hp_growth(p, make_pw_evaluator(p, mc, g), pnorm, pts);
        f << "t,s,Lp\n";
        for (const auto& sm : prof.samples)
            f << fmt17(sm.t) << ',' << fmt17(sm.s) << ',' << fmt17(sm.value) << '\n';
    } else {
        BoundaryData phi = pw_worm_synthesize(p, mc, g);
        scale_boundary(phi, 1.0 / lp_boundary_norm(phi, 2.0));
        std::vector<double> params;
        ApproachPath ap;
        if (kind == "product") {
            ap = ApproachPath::product;
            for (int k = 1; k <= 40 && params.size() < 30; ++k) {
                const double d = std::ldexp(1.0, -k);
                if (d <= 0.5 * std::min(pi / 2, p.half_strip)) params.push_back(d);
            }
        } else if (kind == "coupled") {
            ap = ApproachPath::coupled;
            for (int k = 2; k <= 14; ++k) params.push_back(p.beta * (1.0 - std::ldexp(1.0, -k)));
        } else {
            throw param_out_of_range("--kind must be product, coupled or growth");
        }
        const auto prof = convergence_profile(p, phi, ap, pnorm, params);
        f << "param,distance\n";
        for (const auto& [q, d] : prof) f << fmt17(q) << ',' << fmt17(d) << '\n';
    }
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Szego projection toolkit for the non-smooth worm domain"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<double> wv, zv;
    std::array<std::string, 4> phi_paths;
    std::string suite = "all", check = "idempotence", range, modes_path, kind = "product";
    std::string pnorm_str = "2";
    double y = 0.0, s = 0.0;

    auto* kernel_eval = app.add_subcommand("kernel-eval", "evaluate the Szego kernel series");
    add_common(kernel_eval, opts);
    kernel_eval->add_option("--w", wv, "interior point re,im,s,gamma")->delimiter(',')->required();
    kernel_eval->add_option("--zeta", zv, "boundary point component,x,gamma")->delimiter(',')->required();

    auto* project = app.add_subcommand("project", "interior Szego projection of boundary data");
    add_common(project, opts);
    project->add_option("--phi1", phi_paths[0], "CSV for E1")->required();
    project->add_option("--phi2", phi_paths[1], "CSV for E2")->required();
    project->add_option("--phi3", phi_paths[2], "CSV for E3")->required();
    project->add_option("--phi4", phi_paths[3], "CSV for E4")->required();
    project->add_option("--y", y, "Im z1 of the slice")->required();
    project->add_option("--s", s, "log|z2|^2 of the slice")->required();

    auto* bproject = app.add_subcommand("boundary-project", "boundary Szego operator");
    add_common(bproject, opts);
    bproject->add_option("--phi1", phi_paths[0], "CSV for E1")->required();
    bproject->add_option("--phi2", phi_paths[1], "CSV for E2")->required();
    bproject->add_option("--phi3", phi_paths[2], "CSV for E3")->required();
    bproject->add_option("--phi4", phi_paths[3], "CSV for E4")->required();

    auto* synth = app.add_subcommand("synthesize", "Paley-Wiener synthesis from mode profiles");
    add_common(synth, opts);
    synth->add_option("--modes", modes_path, "CSV of g_j profiles (xi,j,re,im)")->required();

    auto* verify = app.add_subcommand("verify", "run verification checks, emit a JSON report");
    add_common(verify, opts);
    verify->add_option("--suite", suite, "all | strip | kernel | szego | analysis | opnorm | meta | <name>");

    auto* sweep = app.add_subcommand("sweep", "run one check across a beta range");
    add_common(sweep, opts);
    sweep->add_option("--beta-range", range, "lo:hi:n")->required();
    sweep->add_option("--check", check, "check name or substring");

    auto* conv = app.add_subcommand("convergence", "emit convergence / growth tables");
    add_common(conv, opts);
    conv->add_option("--kind", kind, "product | coupled | growth");
    conv->add_option("--modes", modes_path, "CSV of g_j profiles (default: Gaussian g_0)");
    conv->add_option("--p", pnorm_str, "L^p exponent, or 'inf' for the sup distance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const RunConfig rc = resolve(opts);
        const double pnorm = (pnorm_str == "inf" || pnorm_str == "sup")
                                 ? std::numeric_limits<double>::infinity()
                                 : std::stod(pnorm_str);
        if (kernel_eval->parsed()) return cmd_kernel_eval(rc, wv, zv);
        if (project->parsed()) return cmd_project(rc, phi_paths, y, s);
        if (bproject->parsed()) return cmd_boundary_project(rc, phi_paths);
        if (synth->parsed()) return cmd_synthesize(rc, modes_path);
        if (verify->parsed()) return cmd_verify(rc, suite);
        if (sweep->parsed()) return cmd_sweep(rc, range, check);
        if (conv->parsed()) return cmd_convergence(rc, kind, modes_path, pnorm);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
