#include "latsum/composites.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "latsum/errors.hpp"

namespace latsum::composites
{

namespace
{

constexpr double pi = std::numbers::pi;

// Uniform grid over cell coordinates; a bin is at least 2r wide in the plane
// along both axes, so any conflicting center lies in the 3x3 neighborhood.
class CellGrid
{
public:
    CellGrid(const LatticeTau &lat, double r)
    {
        const double w1 = lat.omega1();
        const complex w2 = lat.omega2();
        // rows of the inverse of [w1, Re w2; 0, Im w2]
        const double row1 = std::hypot(1.0 / w1, w2.real() / (w1 * w2.imag()));
        const double row2 = 1.0 / w2.imag();
        m_b1 = bins(1.0 / (2.0 * r * row1));
        m_b2 = bins(1.0 / (2.0 * r * row2));
        m_cells.resize(static_cast<std::size_t>(m_b1) * m_b2);
    }

    void insert(double t1, double t2, std::size_t index) { m_cells[slot(bin(t1, m_b1), bin(t2, m_b2))].push_back(index); }

    template <typename F>
    bool all_neighbors(double t1, double t2, F &&ok) const
    {
        const int c1 = bin(t1, m_b1);
        const int c2 = bin(t2, m_b2);
        const int span1 = std::min(1, (m_b1 - 1) / 2);
        const int span2 = std::min(1, (m_b2 - 1) / 2);
        // with fewer than three bins along an axis every bin is a neighbor
        const int lo1 = m_b1 < 3 ? 0 : -span1;
        const int hi1 = m_b1 < 3 ? m_b1 - 1 : span1;
        const int lo2 = m_b2 < 3 ? 0 : -span2;
        const int hi2 = m_b2 < 3 ? m_b2 - 1 : span2;
        for (int d1 = lo1; d1 <= hi1; ++d1) {
            for (int d2 = lo2; d2 <= hi2; ++d2) {
                const int a = m_b1 < 3 ? d1 : wrap(c1 + d1, m_b1);
                const int b = m_b2 < 3 ? d2 : wrap(c2 + d2, m_b2);
                for (const std::size_t j : m_cells[slot(a, b)]) {
                    if (!ok(j)) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

private:
    static int bins(double count)
    {
        return static_cast<int>(std::clamp(std::floor(count), 1.0, 4096.0));
    }
    static int bin(double t, int b) { return std::min(b - 1, static_cast<int>(t * b)); }
    static int wrap(int i, int b) { return ((i % b) + b) % b; }
    std::size_t slot(int a, int b) const { return static_cast<std::size_t>(a) * m_b2 + b; }

    int m_b1;
    int m_b2;
    std::vector<std::vector<std::size_t>> m_cells;
};

struct KahanSum {
    complex sum = 0.0;
    complex carry = 0.0;

    void add(complex v)
    {
        const complex y = v - carry;
        const complex t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

template <bool WithG2>
RandomSums pair_sums(const weierstrass::LatticeContext &ctx, const DiskConfiguration &cfg)
{
    const std::size_t n = cfg.n();
    if (n == 0) {
        throw DomainError("random sums need at least one disk");
    }
    KahanSum e2;
    KahanSum g2;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = k + 1; m < n; ++m) {
            const complex d = cfg.centers[k] - cfg.centers[m];
            if constexpr (WithG2) {
                const weierstrass::PairValues v = weierstrass::pair_values(ctx, d);
                e2.add(v.e2);
                g2.add(v.g2);
            } else {
                e2.add(weierstrass::eisenstein_e2(ctx, d));
            }
        }
    }
    // both summands are even, so each unordered pair counts twice
    const double nn = static_cast<double>(n);
    const double norm = 1.0 / (nn * nn);
    return {(nn * ctx.s2() + 2.0 * e2.sum) * norm, (nn * ctx.t2() + 2.0 * g2.sum) * norm};
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view s)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw DomainError("malformed number '" + std::string(s) + "' in configuration");
    }
    return v;
}

std::vector<std::string_view> fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

std::vector<std::string_view> header(std::istream &in, std::string &line, std::string_view key, std::size_t count)
{
    if (!std::getline(in, line)) {
        throw DomainError("configuration ends before the '" + std::string(key) + "' line");
    }
    auto f = fields(line);
    if (f.size() != count + 1 || f[0] != key) {
        throw DomainError("expected '" + std::string(key) + "' with " + std::to_string(count)
                          + " value(s), got '" + line + "'");
    }
    f.erase(f.begin());
    return f;
}

} // namespace

double DiskConfiguration::f() const
{
    return static_cast<double>(centers.size()) * pi * r * r;
}

std::size_t GenerationSpec::disk_count() const
{
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("disk radius must be positive");
    }
    if (n.has_value() == f.has_value()) {
        throw DomainError("give exactly one of a disk count or a fraction");
    }
    std::size_t count = 0;
    if (n) {
        count = *n;
    } else {
        if (!(*f > 0.0)) {
            throw DomainError("target fraction must be positive");
        }
        count = static_cast<std::size_t>(std::llround(*f / (pi * r * r)));
    }
    if (count == 0) {
        throw DomainError("configuration would hold no disks");
    }
    const double realized = static_cast<double>(count) * pi * r * r;
    if (!(realized < jamming_fraction)) {
        throw DomainError("fraction " + std::to_string(realized) + " is beyond the RSA jamming limit 0.547");
    }
    return count;
}

DiskConfiguration rsa_generate(const LatticeTau &lat, const GenerationSpec &spec, std::uint64_t seed)
{
    const std::size_t target = spec.disk_count();
    const double r = spec.r;
    const double min_dist = 2.0 * r;
    double shortest = std::numeric_limits<double>::infinity();
    for (int m = -2; m <= 2; ++m) {
        for (int n = -2; n <= 2; ++n) {
            if (m != 0 || n != 0) {
                shortest = std::min(shortest, std::abs(lat.from_cell(m, n)));
            }
        }
    }
    if (!(min_dist < shortest)) {
        throw DomainError("disk diameter reaches the shortest period; a disk would overlap its own image");
    }
    std::mt19937_64 rng(seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    DiskConfiguration cfg{lat, r, {}, seed};
    cfg.centers.reserve(target);
    CellGrid grid(lat, r);
    long rejections = 0;
    while (cfg.centers.size() < target) {
        const double t1 = uniform();
        const double t2 = uniform();
        const complex z = lat.from_cell(t1, t2);
        const bool free = grid.all_neighbors(t1, t2, [&](std::size_t j) {
            return lat.distance_to_lattice(z - cfg.centers[j]) >= min_dist;
        });
        if (!free) {
            if (++rejections >= max_consecutive_rejections) {
                throw SaturationError("RSA stalled after " + std::to_string(cfg.centers.size()) + " of "
                                      + std::to_string(target) + " disks");
            }
            continue;
        }
        rejections = 0;
        grid.insert(t1, t2, cfg.centers.size());
        cfg.centers.push_back(z);
    }
    return cfg;
}

double min_pair_distance(const DiskConfiguration &cfg)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cfg.n(); ++k) {
        for (std::size_t m = k + 1; m < cfg.n(); ++m) {
            best = std::min(best, cfg.lat.distance_to_lattice(cfg.centers[k] - cfg.centers[m]));
        }
    }
    return best;
}

bool non_overlapping(const DiskConfiguration &cfg)
{
    return min_pair_distance(cfg) >= 2.0 * cfg.r;
}

complex e2_sum(const weierstrass::LatticeContext &ctx, const DiskConfiguration &cfg)
{
    return pair_sums<false>(ctx, cfg).e2;
}

complex g2_sum(const weierstrass::LatticeContext &ctx, const DiskConfiguration &cfg)
{
    return pair_sums<true>(ctx, cfg).g2;
}

RandomSums random_sums(const weierstrass::LatticeContext &ctx, const DiskConfiguration &cfg)
{
    return pair_sums<true>(ctx, cfg);
}

TrialStatistics summarize(const std::vector<complex> &samples)
{
    if (samples.empty()) {
        throw DomainError("statistics need at least one sample");
    }
    const double count = static_cast<double>(samples.size());
    complex mean = 0.0;
    for (const complex &x : samples) {
        mean += x;
    }
    mean /= count;
    double var = 0.0;
    for (const complex &x : samples) {
        var += std::norm(x - mean);
    }
    var /= count;
    return {mean, var, samples.size(), std::sqrt(var / count)};
}

TrialReport run_trials(const weierstrass::LatticeContext &ctx, const GenerationSpec &spec, std::size_t trials,
                       std::uint64_t base_seed, const std::function<void(const DiskConfiguration &)> &on_config)
{
    if (trials == 0) {
        throw DomainError("at least one trial is required");
    }
    TrialReport report;
    report.trials.reserve(trials);
    std::vector<complex> e2;
    std::vector<complex> g2;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t seed = base_seed + t;
        const DiskConfiguration cfg = rsa_generate(ctx.lat(), spec, seed);
        if (on_config) {
            on_config(cfg);
        }
        const RandomSums s = random_sums(ctx, cfg);
        report.trials.push_back({seed, cfg.n(), cfg.f(), s.e2, s.g2});
        e2.push_back(s.e2);
        g2.push_back(s.g2);
    }
    report.e2 = summarize(e2);
    report.g2 = summarize(g2);
    return report;
}

void write_configuration(std::ostream &out, const DiskConfiguration &cfg)
{
    const complex tau = cfg.lat.tau();
    out << "omega1 " << format_double(cfg.lat.omega1()) << '\n';
    out << "tau " << format_double(tau.real()) << ' ' << format_double(tau.imag()) << '\n';
    out << "r " << format_double(cfg.r) << '\n';
    out << "N " << cfg.n() << '\n';
    out << "seed " << cfg.seed << '\n';
    for (const complex &z : cfg.centers) {
        out << format_double(z.real()) << ' ' << format_double(z.imag()) << '\n';
    }
}

DiskConfiguration read_configuration(std::istream &in)
{
    std::string line;
    const double omega1 = parse_double(header(in, line, "omega1", 1)[0]);
    const auto tau_f = header(in, line, "tau", 2);
    const complex tau(parse_double(tau_f[0]), parse_double(tau_f[1]));
    const double r = parse_double(header(in, line, "r", 1)[0]);
    const std::string n_f(header(in, line, "N", 1)[0]);
    const std::string seed_f(header(in, line, "seed", 1)[0]);

    std::size_t n = 0;
    std::uint64_t seed = 0;
    if (std::from_chars(n_f.data(), n_f.data() + n_f.size(), n).ec != std::errc()
        || std::from_chars(seed_f.data(), seed_f.data() + seed_f.size(), seed).ec != std::errc()) {
        throw DomainError("malformed N or seed in configuration");
    }
    const LatticeTau lat(tau);
    if (std::abs(lat.omega1() - omega1) > 1e-14 * omega1) {
        throw DomainError("omega1 does not match the unit-area lattice of tau");
    }
    if (!(r > 0.0)) {
        throw DomainError("disk radius must be positive");
    }

    DiskConfiguration cfg{lat, r, {}, seed};
    cfg.centers.reserve(n);
    while (std::getline(in, line)) {
        const auto f = fields(line);
        if (f.empty()) {
            continue;
        }
        if (f.size() != 2) {
            throw DomainError("center line must hold two numbers: '" + line + "'");
        }
        const complex z(parse_double(f[0]), parse_double(f[1]));
        const auto [t1, t2] = lat.to_cell(z);
        if (t1 < -1e-12 || t1 > 1.0 + 1e-12 || t2 < -1e-12 || t2 > 1.0 + 1e-12) {
            throw DomainError("center lies outside the fundamental cell: '" + line + "'");
        }
        cfg.centers.push_back(z);
    }
    if (cfg.centers.size() != n) {
        throw DomainError("configuration declares " + std::to_string(n) + " centers but lists "
                          + std::to_string(cfg.centers.size()));
    }
    return cfg;
}

} // namespace latsum::composites
