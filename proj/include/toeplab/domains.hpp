#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "toeplab/symbol.hpp"

namespace toeplab {

/// Region variants used by the counting experiments. All regions are closed:
/// boundary points count as inside (deterministic tie-break, measure zero).
struct Disk {
    Complex center;
    double radius;
};

struct Annulus {
    Complex center;
    double r_in;
    double r_out;
};

/// Points z with Re(z * conj(e^{i*normal_angle})) >= offset.
struct HalfPlane {
    double normal_angle;
    double offset;
};

struct Polygon {
    std::vector<Complex> vertices;  // simple, in order
};

/// Tube of radius tau around the symbol curve: dist(z, p(S^1)) <= tau.
struct CurveTube {
    LaurentSymbol symbol;
    double tau;
};

class Region {
public:
    using Variant = std::variant<Disk, Annulus, HalfPlane, Polygon, CurveTube>;

    explicit Region(Variant v);

    const Variant& value() const { return v_; }

    /// Short descriptor for records, e.g. "disk:0,0,1.5".
    std::string describe() const;

private:
    Variant v_;
};

/// Exact membership predicate (closed regions).
bool contains(const Region& region, Complex z);

/// Cardinality of {p in points : p in region}.
int count_in_region(const std::vector<Complex>& points, const Region& region);

/// Jordan-block annulus bounds ((dN)^{1/N} e^{-sigma}, (dN)^{1/N}).
std::pair<double, double> annulus_bounds_jordan(int N, double delta, double sigma);

/// Lebesgue measure of {theta in [0,2pi) : f(theta) in region}, by membership
/// sampling (default grid 16384) with bisection of each crossing to 1e-10 and
/// one automatic grid-doubling consistency pass. Throws SuspectBoundary when
/// the two passes disagree on the crossing count (possible tangency).
double preimage_measure(const LaurentSymbol& sym, const Region& region, int grid = 16384);

}  // namespace toeplab
