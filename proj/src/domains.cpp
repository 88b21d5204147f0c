#include "toeplab/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace toeplab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
    auto cross = [](Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); };
    double d1 = cross(b - a, c - a);
    double d2 = cross(b - a, d - a);
    double d3 = cross(d - c, a - c);
    double d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

bool point_on_segment(Complex p, Complex a, Complex b, double eps = 1e-12) {
    Complex ab = b - a, ap = p - a;
    double cross = ab.real() * ap.imag() - ab.imag() * ap.real();
    if (std::abs(cross) > eps * std::max(1.0, std::abs(ab))) return false;
    double dot = ap.real() * ab.real() + ap.imag() * ab.imag();
    return dot >= -eps && dot <= std::norm(ab) + eps;
}

bool polygon_contains(const Polygon& poly, Complex z) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        if (point_on_segment(z, v[i], v[(i + 1) % n])) return true;
    // Ray crossing toward +x; perturb the ray when it grazes a vertex.
    double y = z.imag();
    for (int attempt = 0; attempt < 8; ++attempt) {
        bool degenerate = false;
        int crossings = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex a = v[i], b = v[(i + 1) % n];
            if (std::abs(a.imag() - y) < 1e-14 || std::abs(b.imag() - y) < 1e-14) {
                degenerate = true;
                break;
            }
            if ((a.imag() > y) == (b.imag() > y)) continue;
            double t = (y - a.imag()) / (b.imag() - a.imag());
            double x = a.real() + t * (b.real() - a.real());
            if (x > z.real()) ++crossings;
        }
        if (!degenerate) return (crossings % 2) == 1;
        y = std::nextafter(y + 1e-12 * (attempt + 1), std::numeric_limits<double>::infinity());
    }
    return false;
}

}  // namespace

Region::Region(Variant v) : v_(std::move(v)) {
    if (const auto* d = std::get_if<Disk>(&v_)) {
        if (!(d->radius > 0.0)) throw InvariantViolation("disk radius must be positive");
    } else if (const auto* a = std::get_if<Annulus>(&v_)) {
        if (!(a->r_in > 0.0) || !(a->r_out > a->r_in))
            throw InvariantViolation("annulus requires 0 < r_in < r_out");
    } else if (const auto* p = std::get_if<Polygon>(&v_)) {
        const auto& vs = p->vertices;
        if (vs.size() < 3) throw InvariantViolation("polygon needs at least 3 vertices");
        const std::size_t n = vs.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                if (segments_intersect(vs[i], vs[(i + 1) % n], vs[j], vs[(j + 1) % n]))
                    throw InvariantViolation("polygon is self-intersecting");
            }
    } else if (const auto* t = std::get_if<CurveTube>(&v_)) {
        if (!(t->tau > 0.0)) throw InvariantViolation("tube radius tau must be positive");
    }
}

std::string Region::describe() const {
    std::ostringstream os;
    os.precision(12);
    if (const auto* d = std::get_if<Disk>(&v_)) {
        os << "disk:" << d->center.real() << "," << d->center.imag() << "," << d->radius;
    } else if (const auto* a = std::get_if<Annulus>(&v_)) {
        os << "annulus:" << a->center.real() << "," << a->center.imag() << "," << a->r_in << ","
           << a->r_out;
    } else if (const auto* h = std::get_if<HalfPlane>(&v_)) {
        os << "halfplane:" << h->normal_angle << "," << h->offset;
    } else if (const auto* p = std::get_if<Polygon>(&v_)) {
        os << "polygon:";
        for (std::size_t i = 0; i < p->vertices.size(); ++i) {
            if (i) os << ",";
            os << p->vertices[i].real() << "," << p->vertices[i].imag();
        }
    } else if (const auto* t = std::get_if<CurveTube>(&v_)) {
        os << "tube:" << t->tau;
    }
    return os.str();
}

bool contains(const Region& region, Complex z) {
    const auto& v = region.value();
    if (const auto* d = std::get_if<Disk>(&v)) return std::abs(z - d->center) <= d->radius;
    if (const auto* a = std::get_if<Annulus>(&v)) {
        double r = std::abs(z - a->center);
        return r >= a->r_in && r <= a->r_out;
    }
    if (const auto* h = std::get_if<HalfPlane>(&v)) {
        Complex n = std::polar(1.0, h->normal_angle);
        return z.real() * n.real() + z.imag() * n.imag() >= h->offset;
    }
    if (const auto* p = std::get_if<Polygon>(&v)) return polygon_contains(*p, z);
    const auto& t = std::get<CurveTube>(v);
    return dist_to_curve(t.symbol, z).first <= t.tau;
}

int count_in_region(const std::vector<Complex>& points, const Region& region) {
    int count = 0;
    for (const auto& p : points)
        if (contains(region, p)) ++count;
    return count;
}

std::pair<double, double> annulus_bounds_jordan(int N, double delta, double sigma) {
    if (!(delta > 0.0) || !(sigma > 0.0))
        throw PreconditionViolated("annulus_bounds_jordan requires delta > 0 and sigma > 0");
    double r_hi = std::pow(delta * static_cast<double>(N), 1.0 / static_cast<double>(N));
    return {r_hi * std::exp(-sigma), r_hi};
}

namespace {

struct CrossingScan {
    std::vector<double> crossings;  // ascending in [0, 2pi)
    bool all_inside = false;
};

CrossingScan scan_crossings(const LaurentSymbol& sym, const Region& region, int grid) {
    const double h = kTwoPi / grid;
    std::vector<bool> in(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i)
        in[static_cast<std::size_t>(i)] = contains(region, eval_curve(sym, h * i));

    CrossingScan out;
    int inside_count = 0;
    for (int i = 0; i < grid; ++i) inside_count += in[static_cast<std::size_t>(i)] ? 1 : 0;
    if (inside_count == 0 || inside_count == grid) {
        out.all_inside = inside_count == grid;
        return out;
    }
    for (int i = 0; i < grid; ++i) {
        bool a = in[static_cast<std::size_t>(i)];
        bool b = in[static_cast<std::size_t>((i + 1) % grid)];
        if (a == b) continue;
        double lo = h * i, hi = h * (i + 1);
        bool lo_in = a;
        while (hi - lo > 1e-10) {
            double mid = 0.5 * (lo + hi);
            if (contains(region, eval_curve(sym, mid)) == lo_in) lo = mid;
            else hi = mid;
        }
        out.crossings.push_back(0.5 * (lo + hi));
    }
    std::sort(out.crossings.begin(), out.crossings.end());
    return out;
}

}  // namespace

double preimage_measure(const LaurentSymbol& sym, const Region& region, int grid) {
    CrossingScan coarse = scan_crossings(sym, region, grid);
    CrossingScan fine = scan_crossings(sym, region, 2 * grid);
    if (coarse.crossings.size() != fine.crossings.size())
        throw SuspectBoundary(
            "preimage_measure: crossing count changed under grid refinement (tangency?)");

    const auto& c = fine.crossings;
    if (c.empty()) return fine.all_inside ? kTwoPi : 0.0;

    double measure = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        double a = c[i];
        double b = (i + 1 < c.size()) ? c[i + 1] : c[0] + kTwoPi;
        double mid = 0.5 * (a + b);
        if (contains(region, eval_curve(sym, mid))) measure += b - a;
    }
    return measure;
}

}  // namespace toeplab
