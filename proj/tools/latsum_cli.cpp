#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "latsum/composites.hpp"
#include "latsum/effective.hpp"
#include "latsum/errors.hpp"
#include "latsum/lattice_sums.hpp"
#include "latsum/verify.hpp"
#include "latsum/weierstrass.hpp"

using namespace latsum;
using json = nlohmann::ordered_json;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_verify = 1;
constexpr int exit_domain = 2;
constexpr int exit_convergence = 3;

constexpr double pi = std::numbers::pi;

// Pairs above this count per trial need --full-scale.
constexpr std::size_t desk_scale_disks = 1000;

double env_tolerance()
{
    const char *s = std::getenv("LATSUM_TOL");
    if (s == nullptr || *s == '\0') {
        return lattice::default_tol;
    }
    double v = 0.0;
    const std::string_view sv(s);
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size() || !(v > 0.0)) {
        throw DomainError("LATSUM_TOL is not a positive number: '" + std::string(sv) + "'");
    }
    return v;
}

double parse_real(std::string_view s, const std::string &whole)
{
    if (s.empty() || s == "+") {
        return 1.0;
    }
    if (s == "-") {
        return -1.0;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw DomainError("cannot parse complex number '" + whole + "'");
    }
    return v;
}

// Accepts "a", "bi", "a+bi", "a-bi", with "i" alone meaning 1i.
complex parse_complex(const std::string &text)
{
    std::string s;
    for (char c : text) {
        if (c != ' ') {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw DomainError("empty complex number");
    }
    if (s.back() != 'i' && s.back() != 'j') {
        return {parse_real(s, text), 0.0};
    }
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (s.empty() || s == "+" || s == "-" || s.find_first_not_of("+-.0123456789eE") == std::string::npos) {
            return {0.0, parse_real(s, text)};
        }
        throw DomainError("cannot parse complex number '" + text + "'");
    }
    const std::string_view sv(s);
    return {parse_real(sv.substr(0, split), text), parse_real(sv.substr(split), text)};
}

std::string fmt(double v, int digits)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v == 0.0 ? 0.0 : v);
    return buf;
}

std::string fmt_complex(complex z, int digits = 10)
{
    if (z.imag() == 0.0) {
        return fmt(z.real(), digits);
    }
    const std::string im = fmt(std::abs(z.imag()), digits);
    return fmt(z.real(), digits) + (z.imag() < 0 ? " - " : " + ") + im + "i";
}

json complex_json(complex z)
{
    return json{{"re", z.real()}, {"im", z.imag()}};
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Line parse_line(const std::string &s)
{
    if (s == "im" || s == "imag" || s == "imag_axis") {
        return Line::imag_axis;
    }
    if (s == "plus" || s == "+" || s == "re_plus_half") {
        return Line::re_plus_half;
    }
    if (s == "minus" || s == "-" || s == "re_minus_half") {
        return Line::re_minus_half;
    }
    throw DomainError("unknown line '" + s + "' (use im, plus or minus)");
}

// The canonical line through tau, if any.
std::optional<VerticalLinePoint> line_of(complex tau)
{
    if (tau.real() == 0.0) {
        return VerticalLinePoint{tau.imag(), Line::imag_axis};
    }
    if (tau.real() == 0.5) {
        return VerticalLinePoint{2.0 * tau.imag(), Line::re_plus_half};
    }
    if (tau.real() == -0.5) {
        return VerticalLinePoint{2.0 * tau.imag(), Line::re_minus_half};
    }
    return std::nullopt;
}

struct EvalOptions {
    std::string quantity;
    std::string tau;
    std::optional<double> x;
    std::string line = "im";
    std::string method = "auto";
    std::optional<double> tol;
    std::string format = "human";
};

SumResult evaluate(const EvalOptions &o, double tol, json &inputs)
{
    std::optional<VerticalLinePoint> point;
    std::optional<LatticeTau> lat;
    if (o.x) {
        if (!o.tau.empty()) {
            throw DomainError("give either --tau or --x/--line, not both");
        }
        point = VerticalLinePoint{*o.x, parse_line(o.line)};
        if (*o.x == 0.0) {
            throw DomainError("x must be nonzero on a vertical line");
        }
        inputs["x"] = *o.x;
        inputs["line"] = std::string(to_string(point->line));
    } else {
        if (o.tau.empty()) {
            throw DomainError("missing --tau or --x");
        }
        const complex tau = parse_complex(o.tau);
        lat.emplace(tau);
        point = line_of(tau);
        inputs["tau"] = complex_json(tau);
    }
    inputs["method"] = o.method;
    inputs["tol"] = tol;

    const std::string &q = o.quantity;
    const bool closed_ok = point && (q == "s2" || q == "t2");
    std::string method = o.method;
    if (method == "auto") {
        const double ax = point ? std::abs(point->x) : 0.0;
        method = closed_ok && ax >= 0.05 && ax <= 20.0 ? "closed" : "series";
    }

    if (method == "closed") {
        if (!closed_ok) {
            throw DomainError("closed forms exist only for s2 and t2 on the lines Re tau = 0, +1/2, -1/2");
        }
        const double v = q == "s2" ? lattice::s2_closed(*point) : lattice::t2_closed(*point);
        return {v, Method::closed_form, 0, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(v)};
    }
    if (method == "qseries") {
        if (q != "s2") {
            throw DomainError("the q-series is available for s2 only");
        }
        const LatticeTau l = lat ? *lat : LatticeTau(point->tau());
        SumResult r = lattice::s2_qseries(l, tol);
        if (!lat) {
            r.value *= point->sign();
        }
        return r;
    }
    if (method != "series") {
        throw DomainError("unknown method '" + method + "'");
    }
    if (q == "s4") {
        return lattice::s4(lat ? *lat : LatticeTau(point->tau()), tol);
    }
    // points given as (x, line) carry the sign(x) continuation and the reciprocal remap
    if (!lat) {
        return q == "s2" ? lattice::s2_on_line(*point, tol) : lattice::t2_on_line(*point, tol);
    }
    return q == "s2" ? lattice::s2_series(*lat, tol) : lattice::t2_series(*lat, tol);
}

int cmd_eval(const EvalOptions &o)
{
    const auto t0 = std::chrono::steady_clock::now();
    const double tol = o.tol ? *o.tol : env_tolerance();
    if (!(tol >= lattice::min_tol) || !std::isfinite(tol)) {
        throw DomainError("tolerance must be finite and >= 1e-15");
    }
    json inputs;
    const SumResult r = evaluate(o, tol, inputs);
    const double wall = seconds_since(t0);
    if (o.format == "json") {
        json out{{"command", "eval"},
                 {"quantity", o.quantity},
                 {"inputs", inputs},
                 {"results",
                  {{"value", complex_json(r.value)},
                   {"method", std::string(to_string(r.method))},
                   {"terms_used", r.terms_used},
                   {"err_estimate", r.err_estimate}}},
                 {"wall_time_s", wall}};
        std::cout << out.dump(2) << '\n';
    } else if (o.format == "csv") {
        std::printf("quantity,value_re,value_im,method,terms_used,err_estimate\n%s,%s,%s,%s,%d,%s\n",
                    o.quantity.c_str(), fmt(r.value.real(), 17).c_str(), fmt(r.value.imag(), 17).c_str(),
                    std::string(to_string(r.method)).c_str(), r.terms_used, fmt(r.err_estimate, 17).c_str());
    } else {
        std::string name = o.quantity;
        name[0] = static_cast<char>(std::toupper(name[0]));
        std::cout << name << " = " << fmt_complex(r.value) << "  [" << to_string(r.method) << ", terms "
                  << r.terms_used << ", err " << fmt(r.err_estimate, 3) << "]\n";
        std::cerr << "wall time " << fmt(wall, 3) << " s\n";
    }
    return exit_ok;
}

struct VerifyOptions {
    std::string suite;
    int samples = 50;
    std::uint64_t seed = 7;
    std::string format = "human";
};

int cmd_verify(const VerifyOptions &o)
{
    const auto t0 = std::chrono::steady_clock::now();
    verify::SuiteReport rep;
    if (o.suite == "constants") {
        rep = verify::constants();
    } else if (o.suite == "functional") {
        verify::SuiteReport f = verify::functional(o.samples, o.seed);
        verify::SuiteReport h = verify::half_line_forms(20);
        rep = f;
        rep.checks.push_back({"T2 half-line forms agree at 20 points", h.max_residual(), 1e-10});
    } else if (o.suite == "nasim") {
        rep = verify::nasim();
    } else if (o.suite == "natanzon") {
        rep = verify::natanzon();
    } else if (o.suite == "elliptic") {
        rep = verify::elliptic_layer();
    } else {
        throw DomainError("unknown suite '" + o.suite + "'");
    }
    const double wall = seconds_since(t0);
    const auto failures = rep.failures();
    const std::size_t passed = rep.checks.size() - failures.size();

    if (o.format == "json") {
        json checks = json::array();
        for (const verify::Check &c : rep.checks) {
            checks.push_back({{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance}, {"pass", c.pass()}});
        }
        json out{{"command", "verify"},
                 {"inputs", {{"suite", o.suite}, {"samples", o.samples}, {"seed", o.seed}}},
                 {"results",
                  {{"passed", passed},
                   {"total", rep.checks.size()},
                   {"max_residual", rep.max_residual()},
                   {"checks", checks}}},
                 {"wall_time_s", wall}};
        std::cout << out.dump(2) << '\n';
    } else {
        for (const verify::Check &c : rep.checks) {
            std::printf("%s  %-10s (tol %s)  %s\n", c.pass() ? "pass" : "FAIL", fmt(c.residual, 3).c_str(),
                        fmt(c.tolerance, 1).c_str(), c.name.c_str());
        }
        std::printf("%zu/%zu pass, max residual %s\n", passed, rep.checks.size(), fmt(rep.max_residual(), 3).c_str());
        if (!failures.empty()) {
            std::printf("failed:");
            for (const verify::Check *c : failures) {
                std::printf(" [%s]", c->name.c_str());
            }
            std::printf("\n");
        }
        std::fprintf(stderr, "wall time %s s\n", fmt(wall, 3).c_str());
    }
    return failures.empty() ? exit_ok : exit_verify;
}

struct RsaOptions {
    std::optional<double> r;
    std::optional<double> f;
    std::optional<std::size_t> n;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    std::string tau = "i";
    std::string out;
    std::string format = "json";
    bool full_scale = false;
    std::string dump_config;
};

std::string stats_csv(const char *name, const composites::TrialStatistics &s)
{
    return std::string(name) + "," + fmt(s.mean.real(), 17) + "," + fmt(s.mean.imag(), 17) + ","
           + fmt(s.variance, 17) + "," + std::to_string(s.count) + "," + fmt(s.standard_error, 17) + "\n";
}

int cmd_rsa(RsaOptions o)
{
    const auto t0 = std::chrono::steady_clock::now();
    if (o.full_scale) {
        if (!o.r) {
            o.r = 0.003;
        }
        if (!o.f && !o.n) {
            o.f = 0.09;
        }
    }
    if (!o.r) {
        if (o.n && *o.n == 1 && !o.f) {
            o.r = 0.01;
        } else {
            throw DomainError("missing --r");
        }
    }
    if (!o.f && !o.n) {
        throw DomainError("give --f or --n");
    }
    const composites::GenerationSpec spec{*o.r, o.n, o.f};
    const std::size_t count = spec.disk_count();
    if (count > desk_scale_disks && !o.full_scale) {
        throw DomainError(std::to_string(count) + " disks per trial is paper scale; pass --full-scale to run it");
    }
    if (o.trials == 0) {
        throw DomainError("--trials must be at least 1");
    }
    const complex tau = parse_complex(o.tau);
    const weierstrass::LatticeContext ctx{LatticeTau(tau), env_tolerance()};

    auto dump = [&](const composites::DiskConfiguration &cfg) {
        if (o.dump_config.empty()) {
            return;
        }
        const std::string path = o.trials == 1 ? o.dump_config : o.dump_config + "." + std::to_string(cfg.seed);
        std::ofstream file(path);
        if (!file) {
            throw DomainError("cannot write configuration to " + path);
        }
        composites::write_configuration(file, cfg);
    };
    const composites::TrialReport rep = composites::run_trials(ctx, spec, o.trials, o.seed, dump);
    const double wall = seconds_since(t0);

    std::ostringstream text;
    if (o.format == "csv") {
        text << "trial,seed,N,f,e2_re,e2_im,g2_re,g2_im\n";
        for (std::size_t t = 0; t < rep.trials.size(); ++t) {
            const auto &tr = rep.trials[t];
            text << t << ',' << tr.seed << ',' << tr.n << ',' << fmt(tr.f, 17) << ',' << fmt(tr.e2.real(), 17) << ','
                 << fmt(tr.e2.imag(), 17) << ',' << fmt(tr.g2.real(), 17) << ',' << fmt(tr.g2.imag(), 17) << '\n';
        }
        text << "\nstatistic,mean_re,mean_im,variance,count,standard_error\n";
        text << stats_csv("e2", rep.e2) << stats_csv("g2", rep.g2);
    } else if (o.format == "json") {
        json trials = json::array();
        for (const auto &tr : rep.trials) {
            trials.push_back({{"seed", tr.seed},
                              {"N", tr.n},
                              {"f", tr.f},
                              {"e2", complex_json(tr.e2)},
                              {"g2", complex_json(tr.g2)}});
        }
        auto stats = [](const composites::TrialStatistics &s) {
            return json{{"mean", complex_json(s.mean)},
                        {"variance", s.variance},
                        {"count", s.count},
                        {"standard_error", s.standard_error}};
        };
        json inputs{{"r", *o.r}, {"trials", o.trials}, {"seed", o.seed}, {"tau", complex_json(tau)}};
        if (o.f) {
            inputs["f"] = *o.f;
        }
        if (o.n) {
            inputs["n"] = *o.n;
        }
        json out{{"command", "rsa"},
                 {"inputs", inputs},
                 {"results",
                  {{"S2", complex_json(ctx.s2())},
                   {"T2", complex_json(ctx.t2())},
                   {"trials", trials},
                   {"statistics", {{"e2", stats(rep.e2)}, {"g2", stats(rep.g2)}}}}},
                 {"wall_time_s", wall}};
        text << out.dump(2) << '\n';
    } else {
        throw DomainError("unknown format '" + o.format + "' (use json or csv)");
    }

    if (o.out.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream file(o.out);
        if (!file) {
            throw DomainError("cannot write " + o.out);
        }
        file << text.str();
        std::printf("N %zu, f %s, %zu trials\n", rep.trials.front().n, fmt(rep.trials.front().f, 10).c_str(),
                    rep.trials.size());
        std::printf("mean e2 = %s  (variance %s, standard error %s)\n", fmt_complex(rep.e2.mean).c_str(),
                    fmt(rep.e2.variance, 10).c_str(), fmt(rep.e2.standard_error, 10).c_str());
        std::printf("mean g2 = %s  (variance %s, standard error %s)\n", fmt_complex(rep.g2.mean).c_str(),
                    fmt(rep.g2.variance, 10).c_str(), fmt(rep.g2.standard_error, 10).c_str());
    }
    std::fprintf(stderr, "wall time %s s\n", fmt(wall, 3).c_str());
    return exit_ok;
}

// Mean e2 and g2 from a file written by `rsa` in either format.
std::pair<complex, complex> read_stats(const std::string &path)
{
    std::ifstream file(path);
    if (!file) {
        throw DomainError("cannot read " + path);
    }
    std::stringstream buf;
    buf << file.rdbuf();
    const std::string text = buf.str();
    const json parsed = json::parse(text, nullptr, false);
    if (!parsed.is_discarded()) {
        try {
            const json &s = parsed.at("results").at("statistics");
            auto mean = [&](const char *k) {
                const json &m = s.at(k).at("mean");
                return complex(m.at("re").get<double>(), m.at("im").get<double>());
            };
            return {mean("e2"), mean("g2")};
        } catch (const json::exception &) {
            throw DomainError(path + " is JSON but not an rsa record");
        }
    }
    std::istringstream lines(text);
    std::string line;
    std::optional<complex> e2;
    std::optional<complex> g2;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() == 6 && (cells[0] == "e2" || cells[0] == "g2")) {
            const complex m(parse_real(cells[1], line), parse_real(cells[2], line));
            (cells[0] == "e2" ? e2 : g2) = m;
        }
    }
    if (!e2 || !g2) {
        throw DomainError(path + " holds no e2/g2 statistics");
    }
    return {*e2, *g2};
}

struct EffectiveOptions {
    std::string kind;
    std::optional<double> rho;
    std::optional<double> lambda;
    std::optional<double> lambda1;
    double f = 0.0;
    double mu = 1.0;
    std::optional<double> mu1;
    std::optional<double> kappa;
    std::optional<double> nu;
    std::optional<double> kappa1;
    std::optional<double> nu1;
    std::string tau;
    std::string stats;
    std::string value;
    std::string format = "human";
};

int cmd_effective(const EffectiveOptions &o)
{
    const auto t0 = std::chrono::steady_clock::now();
    const int sources = int(!o.tau.empty()) + int(!o.stats.empty()) + int(!o.value.empty());
    if (sources != 1) {
        throw DomainError("give exactly one of --tau, --stats or --sum");
    }
    const bool conductivity = o.kind == "conductivity";
    if (!conductivity && o.kind != "shear") {
        throw DomainError("unknown kind '" + o.kind + "' (use conductivity or shear)");
    }

    complex sum;
    std::string source;
    if (!o.tau.empty()) {
        const LatticeTau lat(parse_complex(o.tau));
        const double tol = env_tolerance();
        sum = conductivity ? lattice::s2_series(lat, tol).value : lattice::t2_series(lat, tol).value;
        source = conductivity ? "S2(tau)" : "T2(tau)";
    } else if (!o.stats.empty()) {
        const auto [e2, g2] = read_stats(o.stats);
        sum = conductivity ? e2 : g2;
        source = conductivity ? "mean e2" : "mean g2";
    } else {
        sum = parse_complex(o.value);
        source = conductivity ? "e2" : "g2";
    }

    effective::CompositeParams p;
    p.f = o.f;
    json inputs{{"kind", o.kind}, {"f", o.f}, {"source", source}, {"sum", complex_json(sum)}};
    json results;
    std::ostringstream human;
    if (conductivity) {
        if (o.rho.has_value() == (o.lambda.has_value() || o.lambda1.has_value())) {
            throw DomainError("give --rho or both --lambda and --lambda1");
        }
        if (!o.rho && !(o.lambda && o.lambda1)) {
            throw DomainError("give both --lambda and --lambda1");
        }
        p.rho = o.rho ? *o.rho : effective::contrast(*o.lambda, *o.lambda1);
        inputs["rho"] = p.rho;
        const effective::ConductivityTensor t = effective::effective_conductivity(p, sum);
        const double cm = effective::clausius_mossotti(p);
        results = {{"lambda_xx", t.xx},
                   {"lambda_yy", t.yy},
                   {"lambda_xy", t.xy},
                   {"clausius_mossotti", cm},
                   {"gap_xx", cm - t.xx},
                   {"extrapolated", t.extrapolated}};
        human << "lambda_xx/lambda = " << fmt(t.xx, 10) << "\nlambda_yy/lambda = " << fmt(t.yy, 10)
              << "\nlambda_xy/lambda = " << fmt(t.xy, 10) << "\nClausius-Mossotti (1+rho f)/(1-rho f) = " << fmt(cm, 10)
              << "\ngap to lambda_xx = " << fmt(cm - t.xx, 10) << '\n';
        if (t.extrapolated) {
            std::cerr << "warning: |rho| f = " << fmt(std::abs(p.rho * p.f), 4)
                      << " is beyond 0.3, the f^2 truncation is an extrapolation\n";
        }
    } else {
        if (!o.mu1) {
            throw DomainError("missing --mu1");
        }
        if (o.kappa && o.nu) {
            throw DomainError("give --kappa or --nu, not both");
        }
        p.mu = o.mu;
        p.mu1 = *o.mu1;
        p.kappa = o.kappa ? *o.kappa : effective::kappa_from_poisson(o.nu ? *o.nu : 0.25);
        p.kappa1 = o.kappa1 ? *o.kappa1 : (o.nu1 ? effective::kappa_from_poisson(*o.nu1) : p.kappa);
        inputs["mu"] = p.mu;
        inputs["mu1"] = p.mu1;
        inputs["kappa"] = p.kappa;
        inputs["kappa1"] = p.kappa1;
        const double v = effective::effective_shear(p, sum);
        results = {{"mu_e_over_mu", v}};
        human << "mu_e/mu = " << fmt(v, 10) << '\n';
    }
    const double wall = seconds_since(t0);
    if (o.format == "json") {
        json out{{"command", "effective"}, {"inputs", inputs}, {"results", results}, {"wall_time_s", wall}};
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << human.str();
        std::cerr << "wall time " << fmt(wall, 3) << " s\n";
    }
    return exit_ok;
}

int cmd_constants(const std::string &format)
{
    const auto &table = lattice::known_constants();
    if (format == "json") {
        json rows = json::array();
        for (const auto &e : table) {
            rows.push_back({{"label", e.label}, {"tau", complex_json(e.point.tau())}, {"S2", e.s2}, {"T2", e.t2}});
        }
        std::cout << json{{"command", "constants"}, {"results", rows}}.dump(2) << '\n';
    } else if (format == "csv") {
        std::printf("label,tau_re,tau_im,S2,T2\n");
        for (const auto &e : table) {
            const complex tau = e.point.tau();
            std::printf("%s,%s,%s,%s,%s\n", e.label.c_str(), fmt(tau.real(), 17).c_str(), fmt(tau.imag(), 17).c_str(),
                        fmt(e.s2, 17).c_str(), fmt(e.t2, 17).c_str());
        }
    } else {
        std::printf("%-18s %-18s %-18s\n", "tau", "S2", "T2");
        for (const auto &e : table) {
            std::printf("%-18s %-18s %-18s\n", e.label.c_str(), fmt(e.s2, 10).c_str(), fmt(e.t2, 10).c_str());
        }
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Lattice sums S2, T2, S4, lattice elliptic functions and random composite sums"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"human", "json", "csv"};

    EvalOptions ev;
    auto *eval = app.add_subcommand("eval", "evaluate s2, t2 or s4");
    eval->add_option("quantity", ev.quantity, "s2, t2 or s4")->required()->check(CLI::IsMember({"s2", "t2", "s4"}));
    eval->add_option("--tau", ev.tau, "lattice parameter, e.g. i, 0.3+1.7i");
    eval->add_option("--x", ev.x, "point x on a vertical line (negative x is the sign continuation)");
    eval->add_option("--line", ev.line, "im (tau = ix), plus (tau = (1+ix)/2) or minus (tau = (-1+ix)/2)");
    eval->add_option("--method", ev.method, "auto, series, qseries or closed")
        ->check(CLI::IsMember({"auto", "series", "qseries", "closed"}));
    eval->add_option("--tol", ev.tol, "series tolerance (default 1e-12 or LATSUM_TOL)");
    eval->add_option("--format", ev.format)->check(CLI::IsMember(formats));

    VerifyOptions vo;
    auto *ver = app.add_subcommand("verify", "run an identity suite; exit 1 on any breach");
    ver->add_option("suite", vo.suite, "constants, functional, nasim, natanzon or elliptic")
        ->required()
        ->check(CLI::IsMember({"constants", "functional", "nasim", "natanzon", "elliptic"}));
    ver->add_option("--samples", vo.samples, "random points for the functional suite")->check(CLI::PositiveNumber);
    ver->add_option("--seed", vo.seed);
    ver->add_option("--format", vo.format)->check(CLI::IsMember({"human", "json"}));

    RsaOptions ro;
    auto *rsa = app.add_subcommand("rsa", "random disk configurations and their lattice sums e2, g2");
    rsa->add_option("--r", ro.r, "disk radius")->check(CLI::PositiveNumber);
    auto *f_opt = rsa->add_option("--f", ro.f, "target area fraction, N = round(f/(pi r^2))");
    rsa->add_option("--n", ro.n, "number of disks")->excludes(f_opt);
    rsa->add_option("--trials", ro.trials);
    rsa->add_option("--seed", ro.seed, "seed of the first trial; trial t uses seed + t");
    rsa->add_option("--tau", ro.tau, "lattice parameter of the cell");
    rsa->add_option("--out", ro.out, "write the record to this file");
    rsa->add_option("--format", ro.format)->check(CLI::IsMember({"json", "csv"}));
    rsa->add_flag("--full-scale", ro.full_scale, "allow paper-scale runs (defaults r = 0.003, f = 0.09)");
    rsa->add_option("--dump-config", ro.dump_config, "write configurations (suffix .seed when trials > 1)");

    EffectiveOptions eo;
    auto *eff = app.add_subcommand("effective", "effective conductivity or shear modulus to order f^2");
    eff->add_option("kind", eo.kind, "conductivity or shear")->required()->check(CLI::IsMember({"conductivity", "shear"}));
    eff->add_option("--rho", eo.rho, "contrast (lambda1 - lambda)/(lambda1 + lambda)");
    eff->add_option("--lambda", eo.lambda, "matrix conductivity");
    eff->add_option("--lambda1", eo.lambda1, "fiber conductivity");
    eff->add_option("--f", eo.f, "area fraction");
    eff->add_option("--mu", eo.mu, "matrix shear modulus");
    eff->add_option("--mu1", eo.mu1, "fiber shear modulus");
    eff->add_option("--kappa", eo.kappa, "matrix Muskhelishvili constant");
    eff->add_option("--nu", eo.nu, "matrix Poisson ratio (kappa = 3 - 4 nu)");
    eff->add_option("--kappa1", eo.kappa1, "fiber Muskhelishvili constant");
    eff->add_option("--nu1", eo.nu1, "fiber Poisson ratio");
    eff->add_option("--tau", eo.tau, "regular array: use S2(tau) or T2(tau)");
    eff->add_option("--stats", eo.stats, "file written by rsa: use its mean e2 or g2");
    eff->add_option("--sum", eo.value, "use this e2 or g2 directly");
    eff->add_option("--format", eo.format)->check(CLI::IsMember({"human", "json"}));

    std::string const_format = "human";
    auto *cst = app.add_subcommand("constants", "exact S2 and T2 at the tabulated points");
    cst->add_option("--format", const_format)->check(CLI::IsMember(formats));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_domain;
    }

    try {
        if (eval->parsed()) {
            return cmd_eval(ev);
        }
        if (ver->parsed()) {
            return cmd_verify(vo);
        }
        if (rsa->parsed()) {
            return cmd_rsa(ro);
        }
        if (eff->parsed()) {
            return cmd_effective(eo);
        }
        return cmd_constants(const_format);
    } catch (const PoleError &e) {
        std::cerr << "error (pole): " << e.what() << '\n';
        return exit_domain;
    } catch (const DomainError &e) {
        std::cerr << "error (domain): " << e.what() << '\n';
        return exit_domain;
    } catch (const SaturationError &e) {
        std::cerr << "error (saturation): " << e.what() << '\n';
        return exit_convergence;
    } catch (const ConvergenceError &e) {
        std::cerr << "error (convergence): " << e.what() << '\n';
        return exit_convergence;
    }
}
