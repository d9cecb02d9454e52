// Command-line front end: single simulations, convergence tables, update
// matrix spectra, dispersion curves, and DRP optimization, all emitted as CSV.

#include "hermite/analysis.hpp"
#include "hermite/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<int> parse_cells(const std::string& spec) {
    std::vector<int> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw std::invalid_argument("--cells: no grid sizes given");
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CommonOpts {
    std::string scheme = "dual";
    std::string equation = "advection1d";
    int order = 2;
    std::string cells = "16";
    double cfl = 0.5;
    double tfinal = 10.0;
    std::string solution;
    std::string out;
    std::string config;
    bool trace = false;
};

// Key=value config file; '#' starts a comment. Returns "--key value" pairs
// that are injected before the command-line flags, so flags override the file.
std::vector<std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    auto strip = [](std::string s) {
        auto a = s.find_first_not_of(" \t\r");
        auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": expected key = value");
            continue;
        }
        args.push_back("--" + strip(line.substr(0, eq)));
        args.push_back(strip(line.substr(eq + 1)));
    }
    return args;
}

void add_common(CLI::App* sub, CommonOpts& o, bool with_equation = true) {
    auto last = [](CLI::Option* opt) { opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast); };
    last(sub->add_option("--scheme", o.scheme, "dual|virtual|central|upwind"));
    if (with_equation)
        last(sub->add_option("--equation", o.equation, "advection1d|advection2d|wave2d"));
    last(sub->add_option("--order", o.order, "degrees of freedom per node minus one (N)"));
    last(sub->add_option("--cells", o.cells, "grid size(s), comma separated"));
    last(sub->add_option("--cfl", o.cfl, "CFL constant C in (0,1]"));
    last(sub->add_option("--tfinal", o.tfinal, "final time T"));
    last(sub->add_option("--solution", o.solution, "sine1d|gaussian1d|sine2d|standing-wave2d"));
    last(sub->add_option("--out", o.out, "output CSV path (default: stdout)"));
    last(sub->add_option("--config", o.config, "key=value config file; flags override"));
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << content;
}

hermite::ExperimentConfig make_experiment(const CommonOpts& o) {
    hermite::ExperimentConfig ec;
    ec.equation = hermite::equation_from_name(o.equation);
    ec.scheme = hermite::scheme_from_name(o.scheme);
    ec.order = o.order;
    ec.cells = parse_cells(o.cells);
    ec.cfl = o.cfl;
    ec.t_final = o.tfinal;
    ec.solution = o.solution;
    return ec;
}

int cmd_simulate(const CommonOpts& o) {
    hermite::ExperimentConfig ec = make_experiment(o);
    std::ostringstream csv;
    csv << "t,l2_error\n";
    hermite::RunResult r = hermite::run_case(ec, ec.cells.front(), o.trace);
    for (std::size_t i = 0; i < r.times.size(); ++i)
        csv << fmt(r.times[i]) << "," << fmt(r.errors[i]) << "\n";
    csv << fmt(ec.t_final) << "," << fmt(r.l2) << "\n";
    emit(o.out, csv.str());
    return 0;
}

int cmd_converge(const CommonOpts& o) {
    hermite::ExperimentConfig ec = make_experiment(o);
    hermite::ErrorReport rep = hermite::converge(ec);
    std::ostringstream csv;
    csv << "K,error,rate\n";
    for (std::size_t i = 0; i < rep.cells.size(); ++i) {
        csv << rep.cells[i] << "," << fmt(rep.errors[i]) << ",";
        if (i > 0) csv << fmt(rep.rates[i]);
        csv << "\n";
    }
    emit(o.out, csv.str());
    return 0;
}

int cmd_spectrum(const CommonOpts& o) {
    const auto kind = hermite::scheme_from_name(o.scheme);
    const int k = parse_cells(o.cells).front();
    hermite::UpdateBlocks ub = hermite::probe_update_blocks(kind, o.order, o.cfl, 1.0, 1.0);
    hermite::CVec lam = hermite::spectrum(hermite::assemble_global(ub, k));
    std::ostringstream csv;
    csv << "re,im\n";
    for (int i = 0; i < lam.size(); ++i)
        csv << fmt(lam[i].real()) << "," << fmt(lam[i].imag()) << "\n";
    emit(o.out, csv.str());
    return 0;
}

int cmd_dispersion(const CommonOpts& o, int samples) {
    const auto kind = hermite::scheme_from_name(o.scheme);
    hermite::UpdateBlocks ub = hermite::probe_update_blocks(kind, o.order, o.cfl, 1.0, 1.0);
    std::ostringstream csv;
    csv << "kh,E,re_lambda,im_lambda\n";
    const double lo = std::log(0.01), hi = std::log(hermite::kPi);
    for (int i = 0; i < samples; ++i) {
        const double kh = std::exp(lo + (hi - lo) * i / (samples - 1));
        hermite::FloquetResult fr = hermite::floquet_error(ub, kh);
        csv << fmt(kh) << "," << fmt(fr.error) << "," << fmt(fr.lambda.real()) << ","
            << fmt(fr.lambda.imag()) << "\n";
    }
    emit(o.out, csv.str());
    return 0;
}

int cmd_optimize(const CommonOpts& o, int eval_cells) {
    const int k_coarse = parse_cells(o.cells).front();
    hermite::DrpResult dr = hermite::drp_optimize(o.order, o.cfl, 1.0, k_coarse);
    hermite::UpdateBlocks base =
        hermite::probe_update_blocks(hermite::SchemeKind::Virtual, o.order, o.cfl, 1.0, 1.0);
    hermite::UpdateBlocks opt =
        hermite::probe_update_blocks(hermite::SchemeKind::Virtual, o.order, o.cfl, 1.0, 1.0, dr.h2);
    std::ostringstream csv;
    csv << "# optimized H2 (" << dr.h2.rows() << "x" << dr.h2.cols() << "), row major:\n";
    for (int r = 0; r < dr.h2.rows(); ++r) {
        csv << "#";
        for (int c = 0; c < dr.h2.cols(); ++c) csv << " " << fmt(dr.h2(r, c));
        csv << "\n";
    }
    csv << "# objective " << fmt(dr.objective) << ", spectral radius "
        << fmt(hermite::spectral_radius(opt, eval_cells)) << (dr.stagnated ? " (stagnated)" : "")
        << "\n";
    csv << "kh,E_virtual,E_optimized\n";
    for (int m = 1; m <= eval_cells / 2; ++m) {
        const double kh = 2.0 * hermite::kPi * m / eval_cells;
        csv << fmt(kh) << "," << fmt(hermite::floquet_error(base, kh).error) << ","
            << fmt(hermite::floquet_error(opt, kh).error) << "\n";
    }
    emit(o.out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite-method solvers for linear hyperbolic PDEs"};
    app.require_subcommand(1);

    CommonOpts o;
    int disp_samples = 64;
    int eval_cells = 16;

    CLI::App* sim = app.add_subcommand("simulate", "run one case and report the final L2 error");
    add_common(sim, o);
    sim->add_flag("--trace", o.trace, "emit the per-step error trace");

    CLI::App* conv = app.add_subcommand("converge", "L2 convergence table over doubling grids");
    add_common(conv, o);

    CLI::App* spec = app.add_subcommand("spectrum", "eigenvalues of the assembled update matrix");
    add_common(spec, o, false);

    CLI::App* disp = app.add_subcommand("dispersion", "Floquet error E_kh curves");
    add_common(disp, o, false);
    disp->add_option("--samples", disp_samples, "number of kh samples");

    CLI::App* optc = app.add_subcommand("optimize", "DRP optimization of the extended Virtual tail");
    add_common(optc, o, false);
    optc->add_option("--eval-cells", eval_cells, "grid size for the before/after comparison");

    try {
        // Inject config-file values ahead of the command-line flags.
        std::vector<std::string> args(argv + 1, argv + argc);
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--config") {
                std::vector<std::string> cfg_args = read_config_file(args[i + 1]);
                args.insert(args.begin() + 1, cfg_args.begin(), cfg_args.end());
                break;
            }
        }
        std::vector<const char*> cargv = {argv[0]};
        for (auto& a : args) cargv.push_back(a.c_str());
        app.parse(static_cast<int>(cargv.size()), cargv.data());
        CLI::App* sub = app.get_subcommands().front();

        if (sub == sim) return cmd_simulate(o);
        if (sub == conv) return cmd_converge(o);
        if (sub == spec) return cmd_spectrum(o);
        if (sub == disp) return cmd_dispersion(o, disp_samples);
        return cmd_optimize(o, eval_cells);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
