#include "toeplab/randmat.hpp"

#include <cmath>
#include <numbers>

namespace toeplab {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 finalizer: a bijective mix of the counter word.
std::uint64_t mix64(std::uint64_t x) {
    x += kGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

SeededStream::SeededStream(std::uint64_t master_seed, std::uint64_t trial_index)
    : master_seed_(master_seed), trial_index_(trial_index) {
    // Split the master seed by the trial index through two mixing rounds, so
    // streams for adjacent indices share no affine structure.
    key_ = mix64(master_seed ^ mix64(trial_index * 0xD1342543DE82EF95ULL + 0x632BE59BD9B4E019ULL));
}

std::uint64_t SeededStream::next_u64() { return mix64(key_ + (++counter_) * kGamma); }

double SeededStream::next_unit() {
    // 53-bit mantissa in [0,1), flipped to (0,1] so log() is always finite.
    return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Complex SeededStream::next_complex_gaussian() {
    double u = next_unit();
    double v = next_unit();
    double r = std::sqrt(-std::log(u));
    return std::polar(r, 2.0 * std::numbers::pi * v);
}

DenseComplexMatrix sample_gaussian_matrix(std::size_t n, SeededStream& stream) {
    DenseComplexMatrix Q(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) Q(r, c) = stream.next_complex_gaussian();
    return Q;
}

DenseComplexMatrix perturb(const DenseComplexMatrix& P, double delta,
                           const DenseComplexMatrix& Q) {
    if (P.rows() != Q.rows() || P.cols() != Q.cols())
        throw ShapeMismatch("perturb: P and Q shapes differ");
    DenseComplexMatrix out = P;
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += delta * Q.data()[i];
    return out;
}

bool hs_norm_event(const DenseComplexMatrix& Q, double c1) {
    return Q.frobenius_norm() <= c1 * static_cast<double>(Q.rows());
}

}  // namespace toeplab
