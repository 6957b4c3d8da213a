// Expansiveness verdicts from dynamical-ball data, plus the auxiliary point
// sets (fixed, periodic, stable, omega/alpha limits, converging semi-orbits),
// generator covers and the empirical meagre-expansive measure check.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expanso/balls.hpp"
#include "expanso/rng.hpp"
#include "expanso/space.hpp"
#include "expanso/system.hpp"

namespace expanso {

struct ClassifyParams {
    std::vector<int> refinements{2};  // factors for the cardinality scaling proxy
    double growth_threshold = 0.25;   // exponent below => finite/countable proxy
    int interior_multiplier = 2;      // m: interior needs the m*spacing neighbourhood
    std::size_t max_centers = 64;     // deterministic stride sample of centers
    std::uint64_t seed = 0;           // continuum sampling
    int workers = 0;
    const PointSet* mask = nullptr;   // restrict centers and members to a subset
};

// Deterministic stride sample of grid indices (respecting the mask).
std::vector<std::uint32_t> sample_centers(const SampledSpace& space, std::size_t max_centers,
                                          const PointSet* mask = nullptr);

// Smallest ball-cardinality bound at this resolution, or nullopt when the
// scaling proxy reports growth (not n-expansive for any n). Countable models
// skip the proxy: the whole model is countable.
std::optional<int> classify_n_expansive(const OrbitTable& table, double c,
                                        const ClassifyParams& params = {},
                                        ScalingEvidence* evidence_out = nullptr,
                                        std::size_t* witness_center = nullptr);

// True iff the max growth exponent over sampled centers stays under threshold.
bool classify_aleph0(const MapSequence& seq, const SampledSpace& space, double c,
                     const ClassifyParams& params = {}, int horizon = 10,
                     bool bilateral = false, ScalingEvidence* evidence_out = nullptr);

// Interior-at-resolution of a member set: points whose whole m*spacing
// neighbourhood lies in the set. On models with isolated points every point is
// interior to any set containing it (discrete topology).
std::vector<std::uint32_t> interior_at_resolution(const SampledSpace& space,
                                                  const std::vector<std::uint32_t>& members,
                                                  int multiplier);

// True iff no sampled S_c(x) has interior at resolution.
bool classify_meagre(const OrbitTable& table, double c, const ClassifyParams& params = {},
                     std::string* witness = nullptr);

// Epsilon-connected grid subsets standing in for subcontinua: axis-aligned
// segments of a few lengths plus seeded random blobs.
std::vector<std::vector<std::uint32_t>> generate_continua(const SampledSpace& space,
                                                          std::uint64_t seed,
                                                          std::size_t random_blobs = 100);

// True iff every generated continuum C has some n <= N with
// diam(phi_1^n(C)) > c. Meaningless on spaces with isolated points (throws).
bool classify_cw(const OrbitTable& table, double c,
                 const std::vector<std::vector<std::uint32_t>>& continua,
                 std::string* witness = nullptr);
bool classify_cw(const OrbitTable& table, double c, const ClassifyParams& params = {},
                 std::string* witness = nullptr);

struct GeneratorCover {
    std::vector<std::uint32_t> centers; // cover-ball centers (a radius-net)
    double radius = 0.0;
    std::size_t max_intersection_cardinality = 0;
    std::size_t sequences_tested = 0;
};

// Cover by closed balls on a radius-net; samples realizable random bisequences
// {B_m}, |m| <= seq_length, and reports the largest intersection cardinality.
GeneratorCover generator_check(const OrbitTable& table, double cover_radius,
                               std::size_t num_sequences, int seq_length,
                               std::uint64_t seed);

double default_fixtol(const SampledSpace& space);

PointSet fixed_points(const OrbitTable& table, double fixtol = 0.0);
PointSet periodic_points(const OrbitTable& table, int kmax, double fixtol = 0.0);
PointSet stable_points(const OrbitTable& table, const std::vector<double>& eps_list);

PointSet omega_limit(const OrbitTable& table, const Point& x, double tol = 0.0);
PointSet alpha_limit(const OrbitTable& table, const Point& x, double tol = 0.0);
PointSet converging_semiorbits(const OrbitTable& table, double tol = 0.0);

// Normalised counting measure of the interior-at-resolution of S_c(x), per
// sampled center.
std::map<std::uint32_t, double> measure_check(const OrbitTable& table, double c,
                                              const ClassifyParams& params = {});

struct Verdicts {
    std::optional<int> n_expansive;
    bool aleph0_proxy = false;
    std::optional<bool> cw_expansive; // nullopt when the test is meaningless
    bool meagre_expansive = false;
};

struct ClassificationReport {
    std::string system;
    std::string space;
    double c = 0.0;
    int horizon = 0;
    bool bilateral = false;
    Verdicts verdicts;
    ScalingEvidence scaling;
    std::string meagre_witness;  // interior witness when meagre is false
    std::string cw_witness;      // non-expanding continuum when cw is false
    double max_interior_measure = 0.0;
    std::size_t centers_sampled = 0;
    std::size_t truncated_centers = 0;
    std::vector<std::string> notes;
};

ClassificationReport classify_report(const OrbitTable& table, double c,
                                     const ClassifyParams& params = {});

} // namespace expanso
