#pragma once

// Hypothesis predicates and batch verifiers for the balance theorems.
//
// Every verifier returns a Verdict: how many instances were examined, which of
// them failed (with enough parameters to replay the instance), and whether the
// run was inconclusive because nothing matching the statement was found.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aca/arith.hpp"
#include "aca/automaton.hpp"
#include "aca/orbit.hpp"
#include "aca/simplex.hpp"

namespace aca {

enum class TheoremId {
    MainOrbit,            // balanced simplices in orbits of arithmetic arrays
    ArithBalanced,        // sufficient condition for balanced arithmetic simplices
    TriangleNecessary,    // balanced arithmetic triangle => d1, d2, d2-d1 invertible
    TetraNecessary,       // invertibility structure of balanced arithmetic tetrahedra
    TetraMod3Impossible,  // no balanced arithmetic tetrahedron when 3 | m
    TetraEven,            // arithmetic tetrahedra for even m
    OrbitTetraEven,       // orbit tetrahedra for even m
    AntisymTriangle,      // (0,1)-antisymmetric triangles, with the mirrored statement
    SigmaNecessity,       // large balanced simplices force sigma invertible
    PascalCorollary,      // Pascal automaton constructions
    PascalMultinomial,    // delta seed under the Pascal automaton gives multinomials
    Lemma1,               // periodicity of AS(a, m1 d, s)
    Chap1,                // Steinhaus triangles over arithmetic progressions
    Chap2,                // interlaced seed under PCA_1
    AntisymConstraints,   // necessary identities for antisymmetric simplices
};

std::string_view theorem_name(TheoremId id);
std::optional<TheoremId> theorem_from_name(std::string_view name);
std::vector<TheoremId> all_theorems();

struct Failure {
    std::string parameters;
    std::string witness;
    friend bool operator<(const Failure& a, const Failure& b) {
        return a.parameters != b.parameters ? a.parameters < b.parameters : a.witness < b.witness;
    }
    friend bool operator==(const Failure&, const Failure&) = default;
};

struct Verdict {
    explicit Verdict(TheoremId id) : theorem(id) {}

    TheoremId theorem;
    std::uint64_t instances = 0;
    std::vector<Failure> failures;
    double elapsed_seconds = 0.0;
    bool inconclusive = false;
    std::vector<std::string> notes;

    bool passed() const noexcept { return failures.empty() && !inconclusive; }
    /// Adds another verdict's counts and failures; failures stay sorted.
    Verdict& merge(const Verdict& other);
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

/// Which apexes a verifier examines.
struct ApexSampling {
    std::size_t samples = 50;      // random apexes per size (ignored when exhaustive)
    bool exhaustive = false;       // every apex of one space/time period
    std::uint64_t rng_seed = 1;
    std::int64_t space_radius = 0;  // 0 = one size period
    std::int64_t time_span = 0;     // 0 = two size periods
};

struct HypothesisReport {
    bool ok = true;
    std::vector<std::string> failed;
    std::vector<std::string> notes;
    void fail(std::string why) {
        ok = false;
        failed.push_back(std::move(why));
    }
};

/// Sizes s >= 1 with s = -t (mod period) for some t in `offsets`, ascending.
std::vector<std::int64_t> congruent_sizes(std::uint64_t period, std::span<const std::int64_t> offsets,
                                          std::size_t count);

// -- Orbit simplices -------------------------------------------------------

HypothesisReport thm1_hypotheses(const WeightScheme& w, std::span<const Residue> d, std::span<const int> eps);

/// Balanced simplices of orientation eps at the first `size_count` sizes
/// s = -t (mod lcm(ord(sigma), m)), t in [0, n-1]. Throws PreconditionViolated.
Verdict verify_thm1(const WeightScheme& w, const ArithmeticSeed& seed, std::span<const int> eps,
                    std::size_t size_count, const ApexSampling& apexes = {});

/// Orbit tetrahedra for even m at s = 0, -2 (mod lcm(ord(sigma), m)).
HypothesisReport thm6_hypotheses(const WeightScheme& w, std::span<const Residue> d, std::span<const int> eps);
Verdict verify_thm6(const WeightScheme& w, const ArithmeticSeed& seed, std::span<const int> eps,
                    std::size_t size_count, const ApexSampling& apexes = {});

/// Pascal automaton corollaries: builds the seed used in their proofs and
/// runs the matching orbit verifier. Throws PreconditionViolated.
ArithmeticSeed pascal_corollary_seed(unsigned n, Modulus m, std::span<const int> eps);
Verdict verify_pascal_corollary(unsigned n, Modulus m, std::span<const int> eps, std::size_t size_count,
                                const ApexSampling& apexes = {});

/// (0,1)-antisymmetric triangles: q = 1, m odd, d invertible, sigma invertible
/// and sigma = 2 sigma_1 for ++ / --, sigma = -2 sigma_1 for -+ / +- (the mirrored
/// statement, flagged in the notes). Scans apexes, keeps antisymmetric triangles
/// and asserts they are balanced at s = 0, -1 (mod lcm(pord(sigma), m)).
/// A run without any antisymmetric triangle is inconclusive.
Verdict verify_antisym(const WeightScheme& w, const ArithmeticSeed& seed, std::span<const int> eps,
                       std::size_t size_count, const ApexSampling& apexes = {});

struct ConstraintReport {
    struct Item {
        std::string identity;
        bool holds;
    };
    std::vector<Item> items;
    bool all_hold() const noexcept;
    std::optional<std::string> weight_form;  // (0,1) triangles: shape W must have
};

/// Necessary identities for a (u,v)-antisymmetric simplex in the orbit of
/// AA(a, d) (d has q entries; the derived d_n is appended when sigma is invertible).
ConstraintReport antisym_constraints(const WeightScheme& w, std::span<const Residue> d, std::span<const int> eps,
                                     unsigned u, unsigned v);

/// Scans orientations, apexes and sizes in [ceil((5n+3)/2), bound] and asserts
/// that nothing is balanced. Requires gcd(sigma, m) > 1.
Verdict verify_sigma_necessity(const WeightScheme& w, const ArithmeticSeed& seed, std::int64_t bound);
std::int64_t sigma_necessity_threshold(unsigned n);

/// Orbit of the delta seed under PCA_q equals multinomial coefficients mod m
/// for every point with time <= max_time (zero outside the cone).
Verdict verify_pascal_multinomial(unsigned q, Modulus m, std::int64_t max_time);

// -- Arithmetic simplices --------------------------------------------------

struct SweepOptions {
    bool exhaustive = true;
    std::size_t samples = 200;  // random instances when not exhaustive
    std::uint64_t rng_seed = 1;
    bool all_offsets = true;    // also vary the first term a
};

/// AS(a, d, s) balanced whenever gcd(m, n!) = 1, the d_i and d_j - d_i are
/// invertible, and s = -t (mod m); sizes s in {m-n+1..m, 2m-n+1..2m}.
Verdict verify_thm2(Modulus m, unsigned n, const SweepOptions& opts = {});

/// Every balanced AS(0, (d1, d2), s), s <= max_size, has d1, d2, d2-d1 invertible.
Verdict verify_balasn2(Modulus m, std::int64_t max_size);

/// Every balanced AS(0, (d1, d2, d3), s), s <= max_size, has the stated structure
/// (all six differences invertible for odd m; exactly two non-invertible,
/// opposite, of gcd 2 for even m).
Verdict verify_thmarithdim2(Modulus m, std::int64_t max_size);

/// No balanced arithmetic tetrahedron when 3 | m, sizes <= max_size.
Verdict verify_tetra_mod3(Modulus m, std::int64_t max_size);

/// Balanced at the first `size_count` sizes s = 0, -2 (mod m) and not balanced
/// at every s = -1 (mod m) below the largest of them.
Verdict verify_thm5(Residue a, Residue d1, Residue d2, Residue d3, std::size_t size_count);

/// m(x + m1) = m(x) for AS(a, m1 d, s) in Z/(m1 m2), random admissible instances.
Verdict verify_lem1(std::uint64_t m1, std::uint64_t m2, unsigned n, std::size_t samples, std::uint64_t rng_seed = 1);

}  // namespace aca
