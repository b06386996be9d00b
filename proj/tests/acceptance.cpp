// One [PASS]/[FAIL] line per acceptance criterion; runtime budgets are part of each pass condition.
// --full-scale adds the long random-sum ensemble (criterion 8), which is otherwise reported as SKIP.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "latsum/composites.hpp"
#include "latsum/effective.hpp"
#include "latsum/lattice_sums.hpp"
#include "latsum/verify.hpp"
#include "latsum/weierstrass.hpp"

using namespace latsum;

namespace
{

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char *title, double budget_s, const std::function<Outcome()> &body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = body();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = budget_s <= 0.0 || wall < budget_s;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("[%s] %d %s: %s; %.3g s", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), wall);
    if (budget_s > 0.0) {
        std::printf(" (budget %.3g s)", budget_s);
    }
    std::printf("\n");
    std::fflush(stdout);
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string suite_detail(const std::vector<verify::Check> &checks)
{
    double worst = 0.0;
    std::string bad;
    for (const auto &c : checks) {
        worst = std::max(worst, c.residual / c.tolerance);
        if (!c.pass()) {
            bad += fmt(" {%s: %.3g > %.1g}", c.name.c_str(), c.residual, c.tolerance);
        }
    }
    std::string s = fmt("%zu checks, worst residual/tolerance %.3g", checks.size(), worst);
    return bad.empty() ? s : s + ", failing" + bad;
}

bool all_pass(const std::vector<verify::Check> &checks)
{
    for (const auto &c : checks) {
        if (!c.pass()) {
            return false;
        }
    }
    return true;
}

Outcome golden_constants()
{
    const verify::SuiteReport rep = verify::constants(1e-10);
    const double t2i = lattice::t2_series(LatticeTau({0.0, 1.0}), 1e-14).value.real();
    const double printed = 4.078451;
    // printed to 7 significant digits: agreement within half a unit in the last place
    const bool digits = std::abs(t2i - printed) <= 0.5e-6;
    return {rep.passed() && digits,
            suite_detail(rep.checks) + fmt(", T2(i) = %.10f vs printed %.6f", t2i, printed)};
}

Outcome modular_sweep()
{
    const verify::SuiteReport rep = verify::functional(50, 7, 1e-10);
    std::vector<verify::Check> sweep;
    for (const auto &c : rep.checks) {
        if (c.name.find("S2 form = moduli form") == std::string::npos) {
            sweep.push_back(c);
        }
    }
    return {all_pass(sweep), suite_detail(sweep)};
}

Outcome half_line_equivalence()
{
    const verify::SuiteReport rep = verify::half_line_forms(20, 1e-10);
    return {rep.passed(), fmt("max |S2 form - moduli form| = %.3g over 20 x (tol 1e-10)", rep.max_residual())};
}

Outcome suite(const verify::SuiteReport &rep)
{
    return {rep.passed(), suite_detail(rep.checks)};
}

Outcome desk_random_sums()
{
    const weierstrass::LatticeContext ctx{LatticeTau({0.0, 1.0}), 1e-12};
    const composites::GenerationSpec spec{0.012, std::nullopt, 0.09};
    const composites::TrialReport rep = composites::run_trials(ctx, spec, 100, 1);
    const double de2 = std::abs(rep.e2.mean - pi);
    const double dg2 = std::abs(rep.g2.mean - pi / 2.0);
    const bool e2_ok = de2 <= 3.0 * rep.e2.standard_error;
    const bool g2_ok = dg2 <= 3.0 * rep.g2.standard_error;

    const composites::GenerationSpec single{0.05, std::size_t{1}, std::nullopt};
    const composites::TrialReport one = composites::run_trials(ctx, single, 1, 3);
    const bool exact = one.trials[0].e2 == ctx.s2() && one.trials[0].g2 == ctx.t2();

    return {e2_ok && g2_ok && exact,
            fmt("N = %zu, |mean e2 - pi| = %.3g (3 SE = %.3g), |mean g2 - pi/2| = %.3g (3 SE = %.3g), N=1 returns (S2, T2) %s",
                rep.trials[0].n, de2, 3.0 * rep.e2.standard_error, dg2, 3.0 * rep.g2.standard_error,
                exact ? "exactly" : "NOT exactly")};
}

Outcome paper_random_sums()
{
    const weierstrass::LatticeContext ctx{LatticeTau({0.0, 1.0}), 1e-12};
    const composites::GenerationSpec spec{0.003, std::nullopt, 0.09};
    const composites::TrialReport rep = composites::run_trials(ctx, spec, 100, 1);
    const double ref_var = 0.0286;
    const std::complex<double> ref_shift(0.0046, 0.0121);
    const double ratio = rep.g2.variance / ref_var;
    const double dist = std::abs(rep.g2.mean - pi / 2.0 - ref_shift);
    const bool var_ok = ratio >= 0.5 && ratio <= 2.0;
    const bool mean_ok = dist <= 3.0 * rep.g2.standard_error;
    return {var_ok && mean_ok,
            fmt("N = %zu, var g2 = %.4g (reference 0.0286, ratio %.3g), mean g2 - pi/2 = %.4g%+.4gi, "
                "distance to 0.0046+0.0121i = %.3g (3 SE = %.3g)",
                rep.trials[0].n, rep.g2.variance, ratio, (rep.g2.mean - pi / 2.0).real(),
                (rep.g2.mean - pi / 2.0).imag(), dist, 3.0 * rep.g2.standard_error)};
}

Outcome effective_limits()
{
    double worst_ratio = 0.0;
    double worst_at = 0.0;
    double aniso = 0.0;
    const int steps = 60;
    for (int k = -steps; k <= steps; ++k) {
        if (k == 0) {
            continue;
        }
        const double x = 0.3 * k / steps;
        effective::CompositeParams p;
        p.f = 0.3;
        p.rho = x / p.f;
        const effective::ConductivityTensor t = effective::effective_conductivity(p, pi);
        aniso = std::max({aniso, std::abs(t.xx - t.yy), std::abs(t.xy)});
        const double gap = std::abs(effective::clausius_mossotti(p) - t.xx);
        const double ratio = gap / (2.0 * std::pow(std::abs(x), 3));
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_at = x;
        }
    }

    double shear_dev = 0.0;
    for (double f : {0.05, 0.2, 0.4}) {
        for (double g2 : {pi / 2.0, 0.3, 4.0}) {
            effective::CompositeParams p;
            p.f = f;
            p.mu = 2.5;
            p.mu1 = 2.5;
            p.kappa = 2.0;
            p.kappa1 = 1.4;
            shear_dev = std::max(shear_dev, std::abs(effective::effective_shear(p, g2) - 1.0));
        }
    }
    return {worst_ratio <= 1.0 && aniso <= 1e-15 && shear_dev == 0.0,
            fmt("isotropy defect %.3g, max gap/(2|rho f|^3) = %.4g at rho f = %.3g, |mu_e/mu - 1| at mu1 = mu: %.3g",
                aniso, worst_ratio, worst_at, shear_dev)};
}

} // namespace

int main(int argc, char **argv)
{
    bool full_scale = false;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--full-scale") == 0) {
            full_scale = true;
        }
    }

    criterion(1, "golden S2/T2 constants, series and closed form", 1.0, golden_constants);
    {
        // T2(i sqrt3) as printed, pi/2 - 2^(2/3) G(1/3)^12 (9 + 4 sqrt3)/(512 pi^5), beside the series value
        const double g = std::pow(std::tgamma(1.0 / 3.0), 12) * std::cbrt(4.0) / (512.0 * std::pow(pi, 5));
        const double printed = pi / 2.0 - g * (9.0 + 4.0 * std::sqrt(3.0));
        const double series = lattice::t2_series(LatticeTau({0.0, std::sqrt(3.0)}), 1e-14).value.real();
        std::printf("[INFO] T2(i*sqrt3): printed (9+4sqrt3) form %.10g, series %.10g, pi/2 + 3*2^(2/3)G^12/(512pi^5) %.10g\n",
                    printed, series, pi / 2.0 + 3.0 * g);
    }
    criterion(2, "modular relations at 50 random x", 5.0, modular_sweep);
    criterion(3, "half-line T2 difference, two forms agree", 2.0, half_line_equivalence);
    criterion(4, "elliptic layer", 1.0, [] { return suite(verify::elliptic_layer()); });
    criterion(5, "divisor-sum identities", 1.0, [] { return suite(verify::nasim(1e-12)); });
    criterion(6, "Weierstrass and Natanzon functions", 30.0, [] { return suite(verify::natanzon()); });
    criterion(7, "random sums, 100 trials at r = 0.012", 60.0, desk_random_sums);
    if (full_scale) {
        criterion(8, "random sums, 100 trials at r = 0.003", 0.0, paper_random_sums);
    } else {
        std::printf("[SKIP] 8 random sums, 100 trials at r = 0.003: run with --full-scale\n");
    }
    criterion(9, "effective conductivity and shear", 1.0, effective_limits);

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
