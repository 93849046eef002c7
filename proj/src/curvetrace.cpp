#include "hyperseq/curvetrace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hyperseq/errors.hpp"
#include "hyperseq/exactpoly.hpp"
#include "hyperseq/spectral.hpp"

namespace hyperseq {

void GridSpec::validate() const {
    if (!(x_min < x_max) || !(y_min < y_max)) throw PreconditionError("grid: need x_min < x_max and y_min < y_max");
    if (nx < 16 || ny < 16) throw PreconditionError("grid: nx and ny must be at least 16");
}

double GridSpec::cell_diagonal() const { return std::hypot(dx(), dy()); }

bool GridSpec::contains(Complex z) const {
    return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
}

double distance_to_polyline(const std::vector<Complex>& pts, Complex z) {
    if (pts.empty()) return std::numeric_limits<double>::infinity();
    double best = std::abs(pts.front() - z);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const Complex a = pts[i - 1];
        const Complex d = pts[i] - a;
        const double len2 = std::norm(d);
        double t = len2 > 0 ? ((z - a) * std::conj(d)).real() / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        best = std::min(best, std::abs(a + t * d - z));
    }
    return best;
}

namespace {

bool lex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

/// Im(B^k conj A) / Im z, continued by the Wronskian W(B^k, A) on the axis.
class SmoothField {
  public:
    SmoothField(const SequenceSpec& spec, double axis_band)
        : ev_(spec), axis_band_(axis_band) {
        const RatPoly w = critical_wronskian(spec);
        for (const auto& c : w.coeffs()) w_.push_back(to_double(c));
    }

    [[nodiscard]] double operator()(Complex z) const {
        if (std::abs(z.imag()) <= axis_band_) {
            double v = 0.0;
            for (auto it = w_.rbegin(); it != w_.rend(); ++it) v = v * z.real() + *it;
            return v;
        }
        return ev_.numerator_im(z) / z.imag();
    }

  private:
    SpecEvaluator ev_;
    double axis_band_;
    std::vector<double> w_;
};

/// Zero of the field on the segment [p, q] whose end values differ in sign
/// (Illinois variant of regula falsi).
Complex refine_crossing(const SmoothField& field, Complex p, Complex q, double fp, double fq) {
    double t0 = 0.0;
    double t1 = 1.0;
    double f0 = fp;
    double f1 = fq;
    if (f0 == 0.0) return p;
    if (f1 == 0.0) return q;
    int side = 0;
    double t = 0.5;
    for (int it = 0; it < 100 && t1 - t0 > 1e-15; ++it) {
        t = (t0 * f1 - t1 * f0) / (f1 - f0);
        if (!(t > t0 && t < t1)) t = 0.5 * (t0 + t1);
        const double ft = field(p + t * (q - p));
        if (ft == 0.0) break;
        if ((ft > 0) == (f1 > 0)) {
            t1 = t;
            f1 = ft;
            if (side == -1) f0 *= 0.5;
            side = -1;
        } else {
            t0 = t;
            f0 = ft;
            if (side == 1) f1 *= 0.5;
            side = 1;
        }
    }
    return p + t * (q - p);
}

struct Polyline {
    std::vector<Complex> points;
    bool closed = false;
};

class MarchingSquares {
  public:
    MarchingSquares(const SmoothField& field, const GridSpec& grid, const std::vector<Complex>& masked_points)
        : field_(field), grid_(grid), nx_(grid.nx), ny_(grid.ny) {
        values_.resize(static_cast<std::size_t>((nx_ + 1) * (ny_ + 1)));
        for (int j = 0; j <= ny_; ++j)
            for (int i = 0; i <= nx_; ++i) values_[vid(i, j)] = field_(vertex(i, j));
        masked_.assign(static_cast<std::size_t>(nx_ * ny_), false);
        for (auto z : masked_points) {
            if (!grid.contains(z)) continue;
            const double fx = (z.real() - grid.x_min) / grid.dx();
            const double fy = (z.imag() - grid.y_min) / grid.dy();
            for (int i = static_cast<int>(std::floor(fx)) - 1; i <= static_cast<int>(std::floor(fx)) + 1; ++i) {
                for (int j = static_cast<int>(std::floor(fy)) - 1; j <= static_cast<int>(std::floor(fy)) + 1; ++j) {
                    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) continue;
                    if (fx >= i && fx <= i + 1 && fy >= j && fy <= j + 1) masked_[cid(i, j)] = true;
                }
            }
        }
        const std::size_t n_edges = static_cast<std::size_t>(h_count() + (nx_ + 1) * ny_);
        nbr_.assign(n_edges, {-1, -1});
        point_.resize(n_edges);
        has_point_.assign(n_edges, false);
    }

    std::vector<Polyline> run() {
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < nx_; ++i)
                if (!masked_[cid(i, j)]) cell(i, j);
        return chain();
    }

  private:
    [[nodiscard]] Complex vertex(int i, int j) const {
        const double x = i == nx_ ? grid_.x_max : grid_.x_min + i * grid_.dx();
        const double y = j == ny_ ? grid_.y_max : grid_.y_min + j * grid_.dy();
        return {x, y};
    }
    [[nodiscard]] std::size_t vid(int i, int j) const { return static_cast<std::size_t>(j * (nx_ + 1) + i); }
    [[nodiscard]] std::size_t cid(int i, int j) const { return static_cast<std::size_t>(j * nx_ + i); }
    [[nodiscard]] int h_count() const { return (ny_ + 1) * nx_; }
    [[nodiscard]] int h_edge(int i, int j) const { return j * nx_ + i; }
    [[nodiscard]] int v_edge(int i, int j) const { return h_count() + j * (nx_ + 1) + i; }

    void ensure_point(int e, int ia, int ja, int ib, int jb) {
        const auto idx = static_cast<std::size_t>(e);
        if (has_point_[idx]) return;
        point_[idx] = refine_crossing(field_, vertex(ia, ja), vertex(ib, jb), values_[vid(ia, ja)], values_[vid(ib, jb)]);
        has_point_[idx] = true;
    }

    void link(int a, int b) {
        for (int e : {a, b}) {
            auto& slot = nbr_[static_cast<std::size_t>(e)];
            const int other = e == a ? b : a;
            if (slot[0] < 0)
                slot[0] = other;
            else
                slot[1] = other;
        }
    }

    void cell(int i, int j) {
        const std::array<bool, 4> pos = {values_[vid(i, j)] >= 0, values_[vid(i + 1, j)] >= 0,
                                         values_[vid(i + 1, j + 1)] >= 0, values_[vid(i, j + 1)] >= 0};
        const std::array<int, 4> edge = {h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
        std::array<bool, 4> cross = {pos[0] != pos[1], pos[1] != pos[2], pos[3] != pos[2], pos[0] != pos[3]};
        const int n = cross[0] + cross[1] + cross[2] + cross[3];
        if (n == 0) return;
        if (cross[0]) ensure_point(edge[0], i, j, i + 1, j);
        if (cross[1]) ensure_point(edge[1], i + 1, j, i + 1, j + 1);
        if (cross[2]) ensure_point(edge[2], i, j + 1, i + 1, j + 1);
        if (cross[3]) ensure_point(edge[3], i, j, i, j + 1);
        if (n == 2) {
            std::array<int, 2> ends{};
            int m = 0;
            for (int e = 0; e < 4; ++e)
                if (cross[e]) ends[static_cast<std::size_t>(m++)] = edge[static_cast<std::size_t>(e)];
            link(ends[0], ends[1]);
            return;
        }
        const Complex center = vertex(i, j) + Complex(0.5 * grid_.dx(), 0.5 * grid_.dy());
        if ((field_(center) >= 0) == pos[0]) {
            link(edge[0], edge[1]);
            link(edge[2], edge[3]);
        } else {
            link(edge[0], edge[3]);
            link(edge[1], edge[2]);
        }
    }

    std::vector<Polyline> chain() {
        std::vector<Polyline> out;
        std::vector<bool> used(nbr_.size(), false);
        auto degree = [&](std::size_t e) { return (nbr_[e][0] >= 0 ? 1 : 0) + (nbr_[e][1] >= 0 ? 1 : 0); };
        auto walk = [&](std::size_t start) {
            Polyline pl;
            std::size_t cur = start;
            int prev = -1;
            for (;;) {
                used[cur] = true;
                pl.points.push_back(point_[cur]);
                int next = -1;
                for (int cand : nbr_[cur]) {
                    if (cand >= 0 && cand != prev && !used[static_cast<std::size_t>(cand)]) {
                        next = cand;
                        break;
                    }
                }
                if (next < 0) {
                    for (int cand : nbr_[cur]) {
                        if (cand == static_cast<int>(start) && cand != prev && pl.points.size() > 2) {
                            pl.points.push_back(point_[start]);
                            pl.closed = true;
                        }
                    }
                    break;
                }
                prev = static_cast<int>(cur);
                cur = static_cast<std::size_t>(next);
            }
            return pl;
        };
        for (std::size_t e = 0; e < nbr_.size(); ++e)
            if (!used[e] && degree(e) == 1) out.push_back(walk(e));
        for (std::size_t e = 0; e < nbr_.size(); ++e)
            if (!used[e] && degree(e) == 2) out.push_back(walk(e));
        return out;
    }

    const SmoothField& field_;
    const GridSpec& grid_;
    int nx_;
    int ny_;
    std::vector<double> values_;
    std::vector<bool> masked_;
    std::vector<std::array<int, 2>> nbr_;
    std::vector<Complex> point_;
    std::vector<bool> has_point_;
};

class WindowSplitter {
  public:
    WindowSplitter(const SequenceSpec& spec, const GridSpec& grid, double tol, std::vector<Complex> anchors)
        : ev_(spec), sign_(spec.parity_sign()), rho_(spec.rho()), tol_(tol), snap_(2.0 * grid.cell_diagonal()),
          anchors_(std::move(anchors)) {}

    [[nodiscard]] bool inside(Complex z) const {
        const FValue v = f_eval(ev_, z);
        if (v.pole) return false;
        const double s = sign_ * v.f.real();
        return s >= -tol_ && s <= rho_ + tol_;
    }

    void split(const Polyline& pl, std::vector<CurveSegment>& out) const {
        if (pl.points.size() < 2) return;
        std::vector<CurveSegment> runs;
        CurveSegment cur;
        bool cur_in = inside(pl.points[0]);
        cur.points.push_back(pl.points[0]);
        for (std::size_t i = 1; i < pl.points.size(); ++i) {
            const bool in = inside(pl.points[i]);
            if (in != cur_in) {
                const Complex q = boundary(pl.points[i - 1], pl.points[i], cur_in);
                cur.points.push_back(q);
                cur.on_gamma = cur_in;
                runs.push_back(std::move(cur));
                cur = CurveSegment{};
                cur.points.push_back(q);
                cur_in = in;
            }
            cur.points.push_back(pl.points[i]);
        }
        cur.on_gamma = cur_in;
        runs.push_back(std::move(cur));
        if (pl.closed && runs.size() > 1 && runs.front().on_gamma == runs.back().on_gamma) {
            auto& last = runs.back();
            last.points.insert(last.points.end(), runs.front().points.begin() + 1, runs.front().points.end());
            runs.front() = std::move(last);
            runs.pop_back();
        }
        for (auto& r : runs) {
            r.points.erase(std::unique(r.points.begin(), r.points.end()), r.points.end());
            if (r.points.size() >= 2) out.push_back(std::move(r));
        }
    }

  private:
    /// Point where the window flips between a and b: the nearest known
    /// boundary point (endpoint or zero of B) when one is close, else a
    /// bisection on the chord (the returned point lies on the inside).
    [[nodiscard]] Complex boundary(Complex a, Complex b, bool a_in) const {
        double best = snap_;
        std::optional<Complex> hit;
        for (auto z : anchors_) {
            const double d = distance_to_polyline({a, b}, z);
            if (d <= best) {
                best = d;
                hit = z;
            }
        }
        if (hit) return *hit;
        Complex in = a_in ? a : b;
        Complex out = a_in ? b : a;
        for (int it = 0; it < 50; ++it) {
            const Complex m = 0.5 * (in + out);
            (inside(m) ? in : out) = m;
        }
        return in;
    }

    SpecEvaluator ev_;
    double sign_;
    double rho_;
    double tol_;
    double snap_;
    std::vector<Complex> anchors_;
};

std::vector<Polyline> real_axis(const GridSpec& grid, const std::vector<Complex>& real_poles) {
    std::vector<Polyline> out;
    if (grid.y_min > 0.0 || grid.y_max < 0.0) return out;
    Polyline cur;
    for (int i = 0; i <= grid.nx; ++i) {
        const double x = i == grid.nx ? grid.x_max : grid.x_min + i * grid.dx();
        if (i > 0) {
            const double x0 = cur.points.empty() ? x - grid.dx() : cur.points.back().real();
            bool blocked = false;
            for (auto p : real_poles) blocked = blocked || (p.real() >= x0 && p.real() <= x);
            if (blocked) {
                if (cur.points.size() >= 2) out.push_back(std::move(cur));
                cur = Polyline{};
            }
        }
        cur.points.emplace_back(x, 0.0);
    }
    if (cur.points.size() >= 2) out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::vector<CurveSegment> trace_curve(const SequenceSpec& spec, const GridSpec& grid, double tol) {
    grid.validate();
    if (!(tol > 0)) throw PreconditionError("trace_curve: tol must be positive");

    std::vector<Complex> poles;
    std::vector<Complex> real_poles;
    for (const auto& r : exact_roots(spec.a())) {
        poles.push_back(r.location);
        if (r.is_real) real_poles.push_back(r.location);
    }
    const auto endpoints = endpoint_locus(spec).endpoints;
    std::vector<Complex> anchors;
    for (const auto& e : endpoints) anchors.push_back(e.location);
    for (const auto& r : exact_roots(spec.b())) anchors.push_back(r.location);

    const SmoothField field(spec, 1e-3 * grid.dy());
    auto lines = MarchingSquares(field, grid, poles).run();
    for (auto& pl : real_axis(grid, real_poles)) lines.push_back(std::move(pl));

    const WindowSplitter splitter(spec, grid, tol, anchors);
    std::vector<CurveSegment> segments;
    for (const auto& pl : lines) splitter.split(pl, segments);

    const double near = 2.0 * grid.cell_diagonal();
    for (auto& s : segments) {
        if (lex_less(s.points.back(), s.points.front())) std::reverse(s.points.begin(), s.points.end());
        double best = near;
        for (std::size_t e = 0; e < endpoints.size(); ++e) {
            for (auto end : {s.points.front(), s.points.back()}) {
                const double d = std::abs(end - endpoints[e].location);
                if (d <= best) {
                    best = d;
                    s.adjacent_endpoint = e;
                }
            }
        }
    }
    std::stable_sort(segments.begin(), segments.end(), [](const CurveSegment& a, const CurveSegment& b) {
        if (a.points.front() != b.points.front()) return lex_less(a.points.front(), b.points.front());
        if (a.points.back() != b.points.back()) return lex_less(a.points.back(), b.points.back());
        return a.points.size() < b.points.size();
    });
    return segments;
}

namespace {

RatPoly taylor_shift(const RatPoly& p, const Rat& c) {
    const RatPoly x_plus_c(std::vector<Rat>{c, Rat(1)});
    RatPoly q;
    const auto co = p.coeffs();
    for (auto it = co.rbegin(); it != co.rend(); ++it) q = q * x_plus_c + RatPoly::constant(*it);
    return q;
}

}  // namespace

LocalPreimages local_preimages(const SequenceSpec& spec, Complex z0, double epsilon, std::optional<double> radius,
                               double tau_real) {
    if (!(epsilon > 0)) throw PreconditionError("local_preimages: epsilon must be positive");
    LocalPreimages out;
    out.z0 = z0;
    out.epsilon = epsilon;

    bool z0_real = false;
    {
        double best = 1e-6 * (1 + std::abs(z0));
        for (const auto& r : exact_roots(spec.b())) {
            const double d = std::abs(r.location - z0);
            if (d <= best) {
                best = d;
                out.p = r.multiplicity;
                z0_real = r.is_real;
            }
        }
    }
    if (out.p == 0) throw PreconditionError("local_preimages: z0 is not a zero of B");
    const auto pk = static_cast<unsigned>(spec.k()) * out.p;

    if (radius) {
        out.radius = *radius;
    } else {
        RatPoly d = spec.b();
        double fact = 1.0;
        for (unsigned i = 0; i < out.p; ++i) {
            d = derivative(d);
            fact *= i + 1;
        }
        const Complex c = ipow(eval(d, z0) / fact, static_cast<unsigned>(spec.k())) / eval(spec.a(), z0);
        out.radius = 10.0 * std::pow(epsilon / std::abs(c), 1.0 / pk);
    }
    if (!(out.radius > 0)) throw PreconditionError("local_preimages: radius must be positive");

    const Rat eps = rat_from_double(epsilon);
    const Rat shift = rat_from_double(z0.real());
    const double shift_d = to_double(shift);
    const RatPoly bk = pow(spec.b(), static_cast<unsigned>(spec.k()));
    const Rat r_rat = rat_from_double(out.radius);

    for (int sigma : {1, -1}) {
        PreimageBranch& br = sigma == 1 ? out.plus : out.minus;
        br.sigma = sigma;
        const RatPoly q = taylor_shift(bk - spec.a() * (eps * sigma), shift);
        std::vector<Complex> pts;
        for (const auto& r : find_roots(to_cpoly(q))) {
            for (int i = 0; i < r.cluster_size; ++i) {
                const Complex z = r.location + shift_d;
                if (std::abs(z - z0) < out.radius) pts.push_back(z);
            }
        }
        std::vector<bool> real(pts.size(), false);
        if (z0_real) {
            std::vector<std::size_t> order(pts.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return std::abs(pts[a].imag()) < std::abs(pts[b].imag());
            });
            const unsigned n_real = sturm_real_count(squarefree_part(q), -r_rat, r_rat);
            for (unsigned i = 0; i < n_real && i < order.size(); ++i) {
                pts[order[i]].imag(0.0);
                real[order[i]] = true;
            }
        } else {
            for (std::size_t i = 0; i < pts.size(); ++i)
                real[i] = std::abs(pts[i].imag()) <= tau_real * (1 + std::abs(pts[i]));
        }
        std::vector<std::size_t> order(pts.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(pts[a], pts[b]); });
        for (auto i : order) {
            br.points.push_back(pts[i]);
            br.is_real.push_back(real[i]);
        }
        if (br.points.size() > pk) out.overflow = true;
    }
    return out;
}

}  // namespace hyperseq
