// ellik: evaluate K, E, mu, 2F1 and the bound functions, print exact
// coefficient sequences, run the verification suites and emit sweep data.
//
// Exit codes: 0 all pass, 1 a claim failed, 2 usage or domain error,
// 3 a sign could not be decided.

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellik/bounds.hpp"
#include "ellik/coeffseq.hpp"
#include "ellik/elliptic.hpp"
#include "ellik/hypergeom.hpp"
#include "ellik/verify.hpp"

namespace {

using ellik::DoubleDouble;
using ellik::Precision;
using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIndeterminate = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string digits(double v, int n) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, n);
    return std::string(buf, res.ptr);
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Config {
    std::string precision = "double";
    std::string format;
    std::string out;
    std::string c = "e^{4/3}";
    std::optional<double> lo, hi;
    std::optional<std::size_t> points;
    std::string spacing;
    unsigned threads = 0;

    Precision prec() const {
        if (precision == "double") return Precision::Double;
        if (precision == "extended") return Precision::Extended;
        throw UsageError("--precision must be double or extended");
    }
};

void add_common(CLI::App* app, Config& cfg) {
    app->add_option("--precision", cfg.precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));
    app->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", cfg.out, "output path (standard output by default)");
}

void add_grid(CLI::App* app, Config& cfg) {
    app->add_option("--lo", cfg.lo, "lower grid end, in (0,1)");
    app->add_option("--hi", cfg.hi, "upper grid end, in (0,1)");
    app->add_option("--points", cfg.points, "number of uniform grid points");
    app->add_option("--spacing", cfg.spacing, "uniform or log-endpoint-refined");
    app->add_option("--threads", cfg.threads, "worker threads (ELLIK_THREADS caps this)");
}

ellik::GridSpec grid_from(const Config& cfg, ellik::Spacing default_spacing) {
    ellik::GridSpec g;
    g.spacing = default_spacing;
    if (cfg.lo) g.lo = *cfg.lo;
    if (cfg.hi) g.hi = *cfg.hi;
    if (cfg.points) g.points = *cfg.points;
    if (!cfg.spacing.empty()) {
        try {
            g.spacing = ellik::parse_spacing(cfg.spacing);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    g.validate();
    return g;
}

// Writes to --out when given, otherwise standard output.
void emit(const Config& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot open " + cfg.out);
    f << text;
}

template <class Real>
ellik::LogConstant<Real> constant(const Config& cfg) {
    try {
        return ellik::parse_log_constant<Real>(cfg.c);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// ---- scalar functions ----------------------------------------------------

struct FunctionSpec {
    std::size_t params;  // leading parameters before the argument (F takes a, b, c)
    std::string help;
};

const std::map<std::string, FunctionSpec>& functions() {
    static const std::map<std::string, FunctionSpec> f = {
        {"K", {0, "K(r)"}},
        {"E", {0, "E(r)"}},
        {"mu", {0, "Grotzsch modulus mu(r)"}},
        {"mu_inv", {0, "r with mu(r) = y"}},
        {"F", {3, "2F1(a,b;c;x), arguments a b c x"}},
        {"Q1", {0, "K(sqrt x)/ln(c/sqrt(1-x))"}},
        {"dQ1", {0, "Q1'(x)"}},
        {"d2Q1", {0, "Q1''(x)"}},
        {"Q2", {0, "K(r)/ln(1+4/r')"}},
        {"D", {0, "K(sqrt x) - ln(1+4/sqrt(1-x))"}},
        {"dD", {0, "D'(x)"}},
        {"d2D", {0, "D''(x)"}},
        {"h", {0, "numerator of D''"}},
    };
    return f;
}

template <class Real>
Real evaluate(const std::string& name, const std::vector<Real>& params, const Real& x,
              const ellik::LogConstant<Real>& c) {
    using namespace ellik;
    if (name == "K") return ellip_k(Modulus<Real>(x));
    if (name == "E") return ellip_e(Modulus<Real>(x));
    if (name == "mu") return grotzsch_mu(Modulus<Real>(x));
    if (name == "mu_inv") return mu_inverse(x);
    if (name == "F") return gauss_2f1(HypParams<Real>(params[0], params[1], params[2]), x);
    if (name == "Q1") return q1(x, c);
    if (name == "dQ1") return q1_first(x, c);
    if (name == "d2Q1") return q1_second(x, c);
    if (name == "Q2") return q2(x);
    if (name == "D") return d_func(x);
    if (name == "dD") return d_first(x);
    if (name == "d2D") return d_second(x);
    if (name == "h") return h_func(x);
    throw UsageError("unknown function: " + name);
}

template <class Real>
Real parse_real(const std::string& s) {
    try {
        return ellik::real_from_string<Real>(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("malformed number: " + s);
    }
}

template <class Real>
std::string format_value(const Real& v) {
    if constexpr (std::is_same_v<Real, DoubleDouble>) {
        return ellik::to_string(v, 32);
    } else {
        return digits(v, 17);
    }
}

template <class Real>
int run_eval(const std::string& name, const std::vector<std::string>& args, const Config& cfg) {
    const auto it = functions().find(name);
    if (it == functions().end()) throw UsageError("unknown function: " + name);
    const std::size_t np = it->second.params;
    if (args.size() <= np) throw UsageError(name + " needs " + std::to_string(np + 1) + " or more arguments");
    std::vector<Real> params;
    for (std::size_t i = 0; i < np; ++i) params.push_back(parse_real<Real>(args[i]));
    const auto c = constant<Real>(cfg);
    std::string out;
    for (std::size_t i = np; i < args.size(); ++i) {
        out += format_value(evaluate(name, params, parse_real<Real>(args[i]), c)) + "\n";
    }
    emit(cfg, out);
    return kExitPass;
}

// ---- coefficient sequences -----------------------------------------------

struct Sequence {
    std::size_t first;
    std::function<ellik::Rational(std::size_t)> term;
};

const std::map<std::string, Sequence>& sequences() {
    using namespace ellik;
    static const std::map<std::string, Sequence> s = {
        {"wallis", {0, [](std::size_t n) { return wallis(n); }}},
        {"beta", {1, [](std::size_t n) { return beta_seq(n); }}},
        {"alpha", {1, [](std::size_t n) { return alpha_seq(n); }}},
        {"thm2_ratio", {0, [](std::size_t n) { return thm2_ratio(n); }}},
        {"q", {2, [](std::size_t n) { return thm3_q(n); }}},
        {"P5", {2, [](std::size_t n) { return p5_expanded(Rational(static_cast<unsigned long>(n))); }}},
        {"f3", {0, [](std::size_t n) { return f3_coeff(n); }}},
    };
    return s;
}

int run_coeffs(const std::string& name, std::size_t n_max, const Config& cfg) {
    const auto it = sequences().find(name);
    if (it == sequences().end()) throw UsageError("unknown sequence: " + name);
    if (n_max < 1) throw UsageError("n_max must be at least 1");
    const Sequence& seq = it->second;
    if (cfg.format == "json") {
        json rows = json::array();
        for (std::size_t n = seq.first; n <= n_max; ++n) {
            const ellik::Rational v = seq.term(n);
            rows.push_back({{"n", n}, {"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}});
        }
        emit(cfg, rows.dump(2) + "\n");
    } else {
        std::string out = "n,num,den\n";
        for (std::size_t n = seq.first; n <= n_max; ++n) {
            const ellik::Rational v = seq.term(n);
            out += std::to_string(n) + "," + v.get_num().get_str() + "," + v.get_den().get_str() + "\n";
        }
        emit(cfg, out);
    }
    return kExitPass;
}

// ---- verification --------------------------------------------------------

json report_json(const ellik::VerificationReport& r) {
    return {
        {"claim_id", r.claim_id},
        {"status", ellik::to_string(r.status)},
        {"worst_margin", number(r.worst_margin)},
        {"worst_point", number(r.worst_point)},
        {"grid",
         {{"lo", r.grid.lo}, {"hi", r.grid.hi}, {"points", r.grid.points}, {"spacing", ellik::to_string(r.grid.spacing)}}},
        {"precision", ellik::to_string(r.precision)},
        {"runtime_ms", r.runtime_ms},
        {"notes", r.notes},
    };
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

int run_verify(const std::string& target, const Config& cfg) {
    const ellik::GridSpec grid = grid_from(cfg, ellik::Spacing::LogEndpointRefined);
    ellik::VerifyOptions options;
    options.precision = cfg.prec();
    options.c = constant<DoubleDouble>(cfg);
    options.threads = cfg.threads;

    std::vector<ellik::VerificationReport> reports;
    const auto& suites = ellik::suite_names();
    const auto& claims = ellik::claim_registry();
    if (target == "all" || std::find(suites.begin(), suites.end(), target) != suites.end()) {
        reports = ellik::verify_suite(target, grid, options);
    } else if (std::any_of(claims.begin(), claims.end(), [&](const auto& c) { return c.id == target; })) {
        reports.push_back(ellik::verify(target, grid, options));
    } else {
        throw UsageError("unknown suite or claim: " + target);
    }

    if (cfg.format == "csv") {
        std::string out = "claim_id,status,worst_margin,worst_point,precision,runtime_ms,notes\n";
        for (const auto& r : reports) {
            out += r.claim_id + "," + ellik::to_string(r.status) + "," + shortest(r.worst_margin) + "," +
                   shortest(r.worst_point) + "," + ellik::to_string(r.precision) + "," + shortest(r.runtime_ms) + "," +
                   csv_field(r.notes) + "\n";
        }
        emit(cfg, out);
    } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_json(r));
        emit(cfg, arr.dump(2) + "\n");
    }

    bool fail = false, undecided = false;
    for (const auto& r : reports) {
        fail = fail || r.status == ellik::Status::Fail;
        undecided = undecided || r.status == ellik::Status::Indeterminate;
    }
    if (fail) return kExitFail;
    if (undecided) return kExitIndeterminate;
    return kExitPass;
}

// ---- sweeps --------------------------------------------------------------

template <class Real>
std::vector<double> sweep_values(const std::string& name, const std::vector<Real>& params,
                                 const std::vector<double>& xs, const Config& cfg) {
    const auto c = constant<Real>(cfg);
    std::vector<double> values(xs.size());
    ellik::parallel_for(
        xs.size(), [&](std::size_t i) { values[i] = ellik::to_double(evaluate(name, params, Real(xs[i]), c)); },
        cfg.threads);
    return values;
}

int run_sweep(const std::string& name, const std::vector<std::string>& params_text, const Config& cfg) {
    const auto it = functions().find(name);
    if (it == functions().end()) throw UsageError("unknown function: " + name);
    if (params_text.size() != it->second.params) {
        throw UsageError(name + " takes " + std::to_string(it->second.params) + " parameters before the grid variable");
    }
    const ellik::GridSpec grid = grid_from(cfg, ellik::Spacing::Uniform);
    const std::vector<double> xs = grid.samples();
    std::vector<double> values;
    if (cfg.prec() == Precision::Extended) {
        std::vector<DoubleDouble> p;
        for (const auto& s : params_text) p.push_back(parse_real<DoubleDouble>(s));
        values = sweep_values<DoubleDouble>(name, p, xs, cfg);
    } else {
        std::vector<double> p;
        for (const auto& s : params_text) p.push_back(parse_real<double>(s));
        values = sweep_values<double>(name, p, xs, cfg);
    }
    if (cfg.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({{"x", xs[i]}, {"value", number(values[i])}});
        emit(cfg, rows.dump(2) + "\n");
    } else {
        std::string out = "x,value\n";
        for (std::size_t i = 0; i < xs.size(); ++i) out += shortest(xs[i]) + "," + shortest(values[i]) + "\n";
        emit(cfg, out);
    }
    return kExitPass;
}

std::string function_list() {
    std::string s;
    for (const auto& [name, spec] : functions()) s += "  " + name + ": " + spec.help + "\n";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complete elliptic integrals, sharp logarithmic bounds and their verification"};
    app.require_subcommand(1);
    Config cfg;

    std::string fn;
    std::vector<std::string> args;
    auto* eval = app.add_subcommand("eval", "evaluate a function\n" + function_list());
    eval->add_option("function", fn, "function name")->required();
    eval->add_option("args", args, "arguments")->required();
    eval->add_option("--c", cfg.c, "constant c of Q1: decimal, e^{p/q} or pi/ln25");
    add_common(eval, cfg);

    std::string seq;
    std::size_t n_max = 0;
    auto* coeffs = app.add_subcommand("coeffs", "exact coefficient sequences (wallis, beta, alpha, thm2_ratio, q, P5, f3)");
    coeffs->add_option("sequence", seq)->required();
    coeffs->add_option("n_max", n_max)->required();
    add_common(coeffs, cfg);

    std::string target;
    auto* verify = app.add_subcommand("verify", "run a suite (thm1, thm2, thm3, corollaries, sequences, asymptotics, all) "
                                                "or a single claim");
    verify->add_option("suite", target)->required();
    verify->add_option("--c", cfg.c, "constant c of Q1: decimal, e^{p/q} or pi/ln25");
    add_common(verify, cfg);
    add_grid(verify, cfg);

    std::string sweep_fn;
    std::vector<std::string> sweep_params;
    auto* sweep = app.add_subcommand("sweep", "tabulate a function on a grid\n" + function_list());
    sweep->add_option("function", sweep_fn)->required();
    sweep->add_option("params", sweep_params, "leading parameters (a b c for F)");
    sweep->add_option("--c", cfg.c, "constant c of Q1: decimal, e^{p/q} or pi/ln25");
    add_common(sweep, cfg);
    add_grid(sweep, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*eval) {
            return cfg.prec() == Precision::Extended ? run_eval<DoubleDouble>(fn, args, cfg)
                                                     : run_eval<double>(fn, args, cfg);
        }
        if (*coeffs) return run_coeffs(seq, n_max, cfg);
        if (*verify) return run_verify(target, cfg);
        if (*sweep) return run_sweep(sweep_fn, sweep_params, cfg);
    } catch (const UsageError& e) {
        std::cerr << "ellik: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ellik::DomainError& e) {
        std::cerr << "ellik: domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ellik: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "ellik: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
