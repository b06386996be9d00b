#ifndef LATSUM_COMPOSITES_HPP
#define LATSUM_COMPOSITES_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "latsum/lattice.hpp"
#include "latsum/weierstrass.hpp"

namespace latsum::composites
{

/// RSA of disks in the plane jams at about this coverage.
inline constexpr double jamming_fraction = 0.547;
inline constexpr long max_consecutive_rejections = 1000000;

/// N disks of radius r with centers in the fundamental cell of a unit-area lattice.
struct DiskConfiguration {
    LatticeTau lat;
    double r;
    std::vector<complex> centers;
    std::uint64_t seed;

    std::size_t n() const { return centers.size(); }
    double f() const;
};

/// Either a disk count or a target fraction; the count is round(f / (pi r^2)).
struct GenerationSpec {
    double r;
    std::optional<std::size_t> n;
    std::optional<double> f;

    std::size_t disk_count() const;
};

/// Random sequential adsorption: uniform candidates in the cell, kept iff
/// their torus distance to every accepted center is at least 2r.
DiskConfiguration rsa_generate(const LatticeTau &lat, const GenerationSpec &spec, std::uint64_t seed);

/// Smallest pairwise torus distance (infinity for fewer than two disks).
double min_pair_distance(const DiskConfiguration &cfg);

/// True iff every pair is at torus distance >= 2r; exhaustive O(N^2).
bool non_overlapping(const DiskConfiguration &cfg);

struct RandomSums {
    complex e2;
    complex g2;
};

/// e2 = N^-2 sum_k sum_m E2(a_k - a_m) with E2(0) = S2.
complex e2_sum(const weierstrass::LatticeContext &ctx, const DiskConfiguration &cfg);

/// g2 = N^-2 sum_k sum_m G2(a_k - a_m) with G2(0) = T2.
complex g2_sum(const weierstrass::LatticeContext &ctx, const DiskConfiguration &cfg);

/// Both sums in one pass over the pairs.
RandomSums random_sums(const weierstrass::LatticeContext &ctx, const DiskConfiguration &cfg);

struct TrialStatistics {
    complex mean;
    double variance; // mean of |x - mean|^2
    std::size_t count;
    double standard_error;
};

TrialStatistics summarize(const std::vector<complex> &samples);

struct TrialRecord {
    std::uint64_t seed;
    std::size_t n;
    double f;
    complex e2;
    complex g2;
};

struct TrialReport {
    std::vector<TrialRecord> trials;
    TrialStatistics e2;
    TrialStatistics g2;
};

/// Independent trials with seeds base_seed, base_seed + 1, ...; on_config sees each configuration.
TrialReport run_trials(const weierstrass::LatticeContext &ctx, const GenerationSpec &spec, std::size_t trials,
                       std::uint64_t base_seed,
                       const std::function<void(const DiskConfiguration &)> &on_config = {});

/// Line format: "omega1 w", "tau re im", "r r", "N n", "seed s", then "x y" per center.
void write_configuration(std::ostream &out, const DiskConfiguration &cfg);
DiskConfiguration read_configuration(std::istream &in);

} // namespace latsum::composites

#endif
