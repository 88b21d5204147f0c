#pragma once

#include <cstdint>

#include "toeplab/complexmat.hpp"

namespace toeplab {

/// Counter-based splittable random stream. The pair (master_seed, trial_index)
/// fully determines every value drawn; distinct trial indices give
/// statistically independent streams. Value-like: copy freely, no shared
/// state.
class SeededStream {
public:
    SeededStream(std::uint64_t master_seed, std::uint64_t trial_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t trial_index() const { return trial_index_; }

    /// Next raw 64-bit word.
    std::uint64_t next_u64();

    /// Uniform in (0, 1].
    double next_unit();

    /// Standard complex Gaussian, E q = 0, E|q|^2 = 1 (variance 1/2 per real
    /// component) via the polar Box-Muller form sqrt(-log u) e^{2 pi i v}.
    Complex next_complex_gaussian();

private:
    std::uint64_t master_seed_;
    std::uint64_t trial_index_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// n x n matrix of iid standard complex Gaussians, deterministic in the
/// stream state.
DenseComplexMatrix sample_gaussian_matrix(std::size_t n, SeededStream& stream);

/// P + delta * Q. Throws ShapeMismatch.
DenseComplexMatrix perturb(const DenseComplexMatrix& P, double delta,
                           const DenseComplexMatrix& Q);

/// The event ||Q||_HS <= C1 * n.
bool hs_norm_event(const DenseComplexMatrix& Q, double c1);

}  // namespace toeplab
