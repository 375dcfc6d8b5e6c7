// Command-line front end: exact probabilities, tables, asymptotics,
// Monte Carlo verification, and tensor classification/decomposition.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rankprob/mc.hpp"
#include "rankprob/prob.hpp"
#include "rankprob/tensor.hpp"

namespace {

using nlohmann::json;
using namespace rankprob;

constexpr int kExitOk = 0;
constexpr int kExitDegenerate = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Display width in code points (the exact forms carry multi-byte glyphs).
std::size_t display_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80)
            ++w;
    return w;
}

/// Writes to --output when given, else stdout.
void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open output file " + output_path);
    }
    out << text;
}

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    // The environment variable wins over the flag.
    if (const char* env = std::getenv("RANKPROB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("RANKPROB_SEED", "not a valid 64-bit seed");
        }
    }
    return cli_seed;
}

struct CommonSimOpts {
    int n = 2;
    long trials = 200000;
    std::uint64_t seed = 42;
    double tol = 1e-10;
    int workers = 0;
    std::string format = "text";
    std::string output;
    bool distribution = false;
};

void add_output_opts(CLI::App* cmd, std::string& format, std::string& output) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "csv", "structured"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", output, "write output to file instead of stdout");
}

json report_json(const mc::TestReport& r, const char* command, double target_label) {
    json j;
    j["command"] = command;
    j["n"] = r.n;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["tol"] = r.tol;
    j["generator"] = mc::generator_name();
    j["p_hat"] = r.p_hat;
    j["p_exact"] = target_label;
    j["z"] = r.z_score;
    j["ci95"] = {r.ci_lo, r.ci_hi};
    j["ambiguous"] = r.ambiguous;
    j["degenerate"] = r.degenerate;
    return j;
}

std::string report_text(const mc::TestReport& r, const char* title) {
    std::string out;
    out += std::string(title) + "\n";
    out += "n=" + std::to_string(r.n) + " trials=" + std::to_string(r.trials) +
           " seed=" + std::to_string(r.seed) + " tol=" + fmt(r.tol) +
           " generator=" + mc::generator_name() + "\n";
    out += "p_hat   = " + fmt(r.p_hat) + "\n";
    out += "p_exact = " + fmt(r.p_exact) + "\n";
    out += "z       = " + fmt(r.z_score) + "\n";
    out += "ci95    = [" + fmt(r.ci_lo) + ", " + fmt(r.ci_hi) + "]\n";
    out += "ambiguous=" + std::to_string(r.ambiguous) +
           " degenerate=" + std::to_string(r.degenerate) + "\n";
    return out;
}

int run_exact(int n, int digits, const std::string& route_name_opt, const std::string& format,
              const std::string& output) {
    prob::Route route = prob::Route::Direct;
    if (route_name_opt == "explicit")
        route = prob::Route::Explicit;
    else if (route_name_opt == "genfunc")
        route = prob::Route::GenFunc;
    else if (route_name_opt == "recursion")
        route = prob::Route::Recursion;

    prob::RankProbability rp = prob::rank_probability(n, route);
    const std::string plain = rp.p_rank_n.to_string();
    const std::string factored = rp.p_rank_n.to_factored_string();
    const std::string decimal = rp.p_rank_n.to_decimal(digits);
    const std::string comp = rp.complement_string();
    const std::string comp_dec = rp.complement_decimal(digits);

    if (format == "csv") {
        std::string out = "n,exact,exact_factored,decimal,complement,complement_decimal\n";
        out += std::to_string(n) + "," + plain + "," + factored + "," + decimal + "," + comp +
               "," + comp_dec + "\n";
        emit(out, output);
    } else if (format == "structured") {
        json j;
        j["command"] = "exact";
        j["n"] = n;
        j["route"] = prob::route_name(route);
        j["exact"] = plain;
        j["exact_factored"] = factored;
        j["decimal"] = decimal;
        j["coeff_num"] = rp.p_rank_n.coeff().get_num().get_str();
        j["coeff_den"] = rp.p_rank_n.coeff().get_den().get_str();
        j["pi_half_pow"] = rp.p_rank_n.pi_half_pow();
        j["complement"] = comp;
        j["complement_decimal"] = comp_dec;
        emit(j.dump(2) + "\n", output);
    } else {
        std::string out = "P_" + std::to_string(n) + " = " + plain + " = " + decimal + "\n";
        if (factored != plain)
            out += "factored: " + factored + "\n";
        out += "rank " + std::to_string(n + 1) + " probability: " + comp + " = " + comp_dec + "\n";
        emit(out, output);
    }
    return kExitOk;
}

int run_table(int n_max, int digits, const std::string& format, const std::string& output) {
    auto rows = prob::probability_table(n_max, digits);
    if (format == "csv") {
        std::string out = "n,exact,decimal\n";
        for (const auto& r : rows)
            out += std::to_string(r.n) + "," + r.exact_form + "," + r.decimal + "\n";
        emit(out, output);
    } else if (format == "structured") {
        json j;
        j["command"] = "table";
        j["digits"] = digits;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"n", r.n}, {"exact", r.exact_form}, {"decimal", r.decimal}});
        emit(j.dump(2) + "\n", output);
    } else {
        std::string out;
        std::size_t width = 0;
        for (const auto& r : rows)
            width = std::max(width, display_width(r.exact_form));
        for (const auto& r : rows) {
            char head[16];
            std::snprintf(head, sizeof(head), "P_%-3d = ", r.n);
            out += head + r.exact_form +
                   std::string(width - display_width(r.exact_form) + 2, ' ') + "= " + r.decimal +
                   "\n";
        }
        emit(out, output);
    }
    return kExitOk;
}

int run_asymptotics(int n_max, const std::string& format, const std::string& output) {
    auto est_any = prob::log_p_asymptotic(std::max(2, n_max));
    std::string header_a = fmt(est_any.glaisher_A);
    std::string header_z = fmt(est_any.zeta_prime_minus1);

    struct Row {
        int n;
        double exact_log, asym_log, residual, ratio_exact, ratio_asym;
    };
    std::vector<Row> rows;
    for (int n = 2; n <= n_max; ++n) {
        Row r{};
        r.n = n;
        r.exact_log = prob::log_p_exact(n);
        r.asym_log = prob::log_p_asymptotic(n).log_p;
        r.residual = r.exact_log - r.asym_log;
        r.ratio_exact = std::exp(prob::log_p_exact(n + 1) - prob::log_p_exact(n));
        r.ratio_asym = prob::ratio_asymptotic(n);
        rows.push_back(r);
    }

    if (format == "csv") {
        std::string out = "n,log_p_exact,log_p_asymptotic,residual,ratio_exact,ratio_asymptotic\n";
        for (const auto& r : rows)
            out += std::to_string(r.n) + "," + fmt(r.exact_log) + "," + fmt(r.asym_log) + "," +
                   fmt(r.residual) + "," + fmt(r.ratio_exact) + "," + fmt(r.ratio_asym) + "\n";
        emit(out, output);
    } else if (format == "structured") {
        json j;
        j["command"] = "asymptotics";
        j["glaisher_A"] = est_any.glaisher_A;
        j["zeta_prime_minus1"] = est_any.zeta_prime_minus1;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"n", r.n},
                                 {"log_p_exact", r.exact_log},
                                 {"log_p_asymptotic", r.asym_log},
                                 {"residual", r.residual},
                                 {"ratio_exact", r.ratio_exact},
                                 {"ratio_asymptotic", r.ratio_asym}});
        emit(j.dump(2) + "\n", output);
    } else {
        std::string out = "Glaisher A = " + header_a + "   zeta'(-1) = " + header_z + "\n";
        out += "   n     log P_n (exact)   log P_n (asym)      residual    P_{n+1}/P_n   (e/4)^((2n+1)/4)\n";
        for (const auto& r : rows) {
            char line[200];
            std::snprintf(line, sizeof(line), "%4d %17.10f %17.10f %13.3e %13.9f %13.9f\n", r.n,
                          r.exact_log, r.asym_log, r.residual, r.ratio_exact, r.ratio_asym);
            out += line;
        }
        emit(out, output);
    }
    return kExitOk;
}

int run_simulate(const CommonSimOpts& o, bool ginibre) {
    mc::EmpiricalKDistribution dist =
        ginibre ? mc::run_ginibre_trials(o.n, o.trials, o.seed, o.tol, o.workers)
                : mc::run_trials(o.n, o.trials, o.seed, o.tol, o.workers);
    const double p_exact = ginibre
                               ? std::exp2(-static_cast<double>(o.n) * (o.n - 1) / 4.0)
                               : prob::p_rank_direct(o.n).to_double();
    mc::TestReport report;
    {
        // derive the report from the same tallies so text/csv/structured agree
        report.n = dist.n;
        report.trials = dist.trials;
        report.ambiguous = dist.ambiguous;
        report.degenerate = dist.degenerate;
        report.seed = dist.seed;
        report.tol = dist.tol;
        report.p_exact = p_exact;
        report.p_hat = dist.frequency(dist.n);
        report.z_score = mc::z_score(report.p_hat, p_exact, dist.effective_trials());
        std::tie(report.ci_lo, report.ci_hi) = mc::wilson_interval(report.p_hat, dist.effective_trials());
    }

    const char* title = ginibre ? "ginibre all-real-eigenvalue check" : "pencil rank-probability simulation";
    if (o.format == "csv") {
        emit(o.distribution ? mc::to_csv(dist) : mc::to_csv(report), o.output);
    } else if (o.format == "structured") {
        json j = report_json(report, ginibre ? "ginibre" : "simulate", p_exact);
        json counts = json::object();
        for (const auto& [k, c] : dist.counts)
            counts[std::to_string(k)] = c;
        j["counts"] = counts;
        auto m = mc::moment_report(dist);
        j["moments"] = {{"mean", m.mean}, {"variance", m.variance}, {"skewness", m.skewness}};
        emit(j.dump(2) + "\n", o.output);
    } else {
        std::string out = report_text(report, title);
        if (o.distribution) {
            out += "k,tally\n";
            for (const auto& [k, c] : dist.counts)
                out += std::to_string(k) + "," + std::to_string(c) + "\n";
            auto m = mc::moment_report(dist);
            out += "mean(k)=" + fmt(m.mean) + " var(k)=" + fmt(m.variance) +
                   " skewness=" + fmt(m.skewness) + "\n";
        }
        emit(out, o.output);
    }
    return kExitOk;
}

int run_classify(const std::string& input, double tol, const std::string& format,
                 const std::string& output) {
    tensor::Tensor3 t = tensor::load_tensor(input);
    tensor::RankVerdict v = tensor::classify_rank(t, tol);

    std::string rank_text;
    if (v.verdict == tensor::Verdict::RankN)
        rank_text = "rank " + std::to_string(t.n);
    else if (v.verdict == tensor::Verdict::RankNPlus1)
        rank_text = "rank " + std::to_string(t.n + 1);
    else
        rank_text = "degenerate (no rank claim)";

    if (format == "csv") {
        std::string out = "n,verdict,rank,real_count,margin\n";
        out += std::to_string(t.n) + "," + tensor::verdict_name(v.verdict) + "," +
               (v.verdict == tensor::Verdict::Degenerate
                    ? std::string("-")
                    : std::to_string(v.verdict == tensor::Verdict::RankN ? t.n : t.n + 1)) +
               "," + std::to_string(v.real_count) + "," + fmt(v.margin) + "\n";
        emit(out, output);
    } else if (format == "structured") {
        json j;
        j["command"] = "classify";
        j["n"] = t.n;
        j["verdict"] = tensor::verdict_name(v.verdict);
        j["rank"] = rank_text;
        j["real_count"] = v.real_count;
        j["margin"] = v.margin;
        j["tol"] = tol;
        emit(j.dump(2) + "\n", output);
    } else {
        std::string out = "verdict: " + rank_text + "\n";
        out += "real generalized eigenvalues: " + std::to_string(v.real_count) + " of " +
               std::to_string(t.n) + "\n";
        out += "margin: " + fmt(v.margin) + "\n";
        if (v.verdict == tensor::Verdict::RankN && v.margin <= tol)
            out += "warning: margin at or below tol; spectrum is numerically repeated\n";
        emit(out, output);
    }
    return v.verdict == tensor::Verdict::Degenerate ? kExitDegenerate : kExitOk;
}

int run_decompose(const std::string& input, const std::string& factors_path, double tol,
                  const std::string& format, const std::string& output) {
    tensor::Tensor3 t = tensor::load_tensor(input);
    tensor::Decomposition dec;
    try {
        dec = tensor::decompose_rank_n(t, tol);
    } catch (const NotRankNError& e) {
        std::cerr << "decompose: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const RepeatedEigenvaluesError& e) {
        std::cerr << "decompose: " << e.what() << "\n";
        return kExitDegenerate;
    }
    const double err = tensor::relative_error(dec.factors, t);

    json jf;
    jf["n"] = t.n;
    jf["r"] = dec.factors.r;
    jf["u"] = dec.factors.u;
    jf["v"] = dec.factors.v;
    jf["w"] = dec.factors.w;
    jf["reconstruction_relative_error"] = err;
    jf["eigenvector_condition"] = dec.eigenvector_condition;
    jf["min_eigenvalue_gap"] = dec.min_eigenvalue_gap;

    if (!factors_path.empty()) {
        std::ofstream fout(factors_path);
        if (!fout)
            throw std::runtime_error("cannot open factors file " + factors_path);
        fout << jf.dump(2) << "\n";
    }

    if (format == "structured" || format == "csv") {
        emit(jf.dump(2) + "\n", output);
    } else {
        std::string out = "rank " + std::to_string(dec.factors.r) + " decomposition found\n";
        out += "reconstruction relative error: " + fmt(err) + "\n";
        out += "eigenvector condition estimate: " + fmt(dec.eigenvector_condition) + "\n";
        out += "min eigenvalue gap (normalized): " + fmt(dec.min_eigenvalue_gap) + "\n";
        for (int i = 0; i < dec.factors.r; ++i) {
            out += "w_" + std::to_string(i + 1) + " = (" + fmt(dec.factors.w[static_cast<std::size_t>(i)][0]) + ", " +
                   fmt(dec.factors.w[static_cast<std::size_t>(i)][1]) + ")\n";
        }
        emit(out, output);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and Monte Carlo rank probabilities for random n x n x 2 tensors"};
    app.require_subcommand(1);

    // exact
    int ex_n = 2, ex_digits = 12;
    std::string ex_route = "direct", ex_format = "text", ex_output;
    auto* exact_cmd = app.add_subcommand("exact", "exact P_n in closed form plus decimal");
    exact_cmd->add_option("--n", ex_n, "tensor slice dimension")->required()->check(CLI::PositiveNumber);
    exact_cmd->add_option("--digits", ex_digits, "significant digits")->check(CLI::PositiveNumber)->capture_default_str();
    exact_cmd->add_option("--route", ex_route, "evaluation route")
        ->check(CLI::IsMember({"direct", "explicit", "genfunc", "recursion"}))
        ->capture_default_str();
    add_output_opts(exact_cmd, ex_format, ex_output);

    // table
    int tb_nmax = 13, tb_digits = 12;
    std::string tb_format = "text", tb_output;
    auto* table_cmd = app.add_subcommand("table", "exact probability table for n = 1..n_max");
    table_cmd->add_option("--n-max", tb_nmax, "largest n")->check(CLI::PositiveNumber)->capture_default_str();
    table_cmd->add_option("--digits", tb_digits, "significant digits")->check(CLI::PositiveNumber)->capture_default_str();
    add_output_opts(table_cmd, tb_format, tb_output);

    // asymptotics
    int as_nmax = 20;
    std::string as_format = "text", as_output;
    auto* asym_cmd = app.add_subcommand("asymptotics", "exact vs asymptotic log P_n and ratios");
    asym_cmd->add_option("--n-max", as_nmax, "largest n")->check(CLI::Range(2, 1000000))->capture_default_str();
    add_output_opts(asym_cmd, as_format, as_output);

    // simulate / ginibre
    CommonSimOpts sim, gin;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo pencil eigenvalue-count trials");
    sim_cmd->add_option("--n", sim.n, "tensor slice dimension")->required()->check(CLI::PositiveNumber);
    sim_cmd->add_option("--trials", sim.trials, "number of trials")->check(CLI::PositiveNumber)->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "rng seed (RANKPROB_SEED overrides)")->capture_default_str();
    sim_cmd->add_option("--tol", sim.tol, "real/complex dead-band tolerance")->capture_default_str();
    sim_cmd->add_option("--workers", sim.workers, "worker threads (0 = auto)")->capture_default_str();
    sim_cmd->add_flag("--distribution", sim.distribution, "emit full k tallies instead of the report");
    add_output_opts(sim_cmd, sim.format, sim.output);

    auto* gin_cmd = app.add_subcommand("ginibre", "single-matrix all-real-eigenvalue check");
    gin_cmd->add_option("--n", gin.n, "matrix dimension")->required()->check(CLI::PositiveNumber);
    gin_cmd->add_option("--trials", gin.trials, "number of trials")->check(CLI::PositiveNumber)->capture_default_str();
    gin_cmd->add_option("--seed", gin.seed, "rng seed (RANKPROB_SEED overrides)")->capture_default_str();
    gin_cmd->add_option("--tol", gin.tol, "real/complex dead-band tolerance")->capture_default_str();
    gin_cmd->add_option("--workers", gin.workers, "worker threads (0 = auto)")->capture_default_str();
    gin_cmd->add_flag("--distribution", gin.distribution, "emit full k tallies instead of the report");
    add_output_opts(gin_cmd, gin.format, gin.output);

    // classify / decompose
    std::string cl_input, cl_format = "text", cl_output;
    double cl_tol = 1e-10;
    auto* cl_cmd = app.add_subcommand("classify", "typical-rank verdict for a tensor file");
    cl_cmd->add_option("-i,--input", cl_input, "tensor file")->required();
    cl_cmd->add_option("--tol", cl_tol, "classification tolerance")->capture_default_str();
    add_output_opts(cl_cmd, cl_format, cl_output);

    std::string de_input, de_factors, de_format = "text", de_output;
    double de_tol = 1e-10;
    auto* de_cmd = app.add_subcommand("decompose", "explicit rank-n decomposition of a tensor file");
    de_cmd->add_option("-i,--input", de_input, "tensor file")->required();
    de_cmd->add_option("--factors", de_factors, "write factors to this JSON file");
    de_cmd->add_option("--tol", de_tol, "decomposition tolerance")->capture_default_str();
    add_output_opts(de_cmd, de_format, de_output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(exact_cmd))
            return run_exact(ex_n, ex_digits, ex_route, ex_format, ex_output);
        if (app.got_subcommand(table_cmd))
            return run_table(tb_nmax, tb_digits, tb_format, tb_output);
        if (app.got_subcommand(asym_cmd))
            return run_asymptotics(as_nmax, as_format, as_output);
        if (app.got_subcommand(sim_cmd)) {
            sim.seed = effective_seed(sim.seed);
            return run_simulate(sim, false);
        }
        if (app.got_subcommand(gin_cmd)) {
            gin.seed = effective_seed(gin.seed);
            return run_simulate(gin, true);
        }
        if (app.got_subcommand(cl_cmd))
            return run_classify(cl_input, cl_tol, cl_format, cl_output);
        if (app.got_subcommand(de_cmd))
            return run_decompose(de_input, de_factors, de_tol, de_format, de_output);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const rankprob::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
