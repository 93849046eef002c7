#pragma once

#include <optional>
#include <vector>

#include "hyperseq/numroots.hpp"
#include "hyperseq/sequence_spec.hpp"

namespace hyperseq {

/// Viewport [x_min, x_max] x [y_min, y_max] split into nx by ny cells.
struct GridSpec {
    double x_min = -4.0;
    double x_max = 4.0;
    double y_min = -4.0;
    double y_max = 4.0;
    int nx = 400;
    int ny = 400;

    /// Throws PreconditionError unless x_min < x_max, y_min < y_max and
    /// nx, ny >= 16.
    void validate() const;
    [[nodiscard]] double dx() const { return (x_max - x_min) / nx; }
    [[nodiscard]] double dy() const { return (y_max - y_min) / ny; }
    [[nodiscard]] double cell_diagonal() const;
    [[nodiscard]] bool contains(Complex z) const;
};

struct CurveSegment {
    std::vector<Complex> points;
    bool on_gamma = false;
    /// Index into endpoint_locus(spec).endpoints of an endpoint at one of
    /// the segment ends.
    std::optional<std::size_t> adjacent_endpoint;
};

inline constexpr double kDefaultCurveTol = 1e-9;

/// Traces Im(B^k/A) = 0 in the viewport and splits it into runs inside and
/// outside the window 0 <= (-1)^k Re f <= rho (slack tol). Non-real arcs
/// come from marching squares on Im(B^k conj A)/Im z; the real axis is
/// added explicitly. Cells holding a zero of A are skipped. Segments are
/// sorted by their first point.
std::vector<CurveSegment> trace_curve(const SequenceSpec& spec, const GridSpec& grid, double tol = kDefaultCurveTol);

/// Distance from z to the polyline.
double distance_to_polyline(const std::vector<Complex>& pts, Complex z);

struct PreimageBranch {
    int sigma = 1;
    std::vector<Complex> points;  // sorted by (re, im)
    std::vector<bool> is_real;
};

struct LocalPreimages {
    Complex z0;
    unsigned p = 0;  // multiplicity of z0 as a zero of B
    double epsilon = 0.0;
    double radius = 0.0;
    PreimageBranch plus;
    PreimageBranch minus;
    /// Some branch found more than p k roots in the disk.
    bool overflow = false;
};

inline constexpr double kDefaultPreimageEpsilon = 1e-4;

/// Solutions of f(z) = sigma epsilon, sigma = +1, -1, near a zero z0 of B,
/// from the roots of B^k - sigma epsilon A inside |z - z0| < radius. The
/// default radius is 10 (epsilon / |c|)^{1/(pk)} with c the leading
/// coefficient of f at z0. Real solutions of a real z0 are counted exactly.
/// Throws PreconditionError when z0 is not a zero of B or epsilon <= 0.
LocalPreimages local_preimages(const SequenceSpec& spec, Complex z0, double epsilon = kDefaultPreimageEpsilon,
                               std::optional<double> radius = std::nullopt, double tau_real = kDefaultTauReal);

}  // namespace hyperseq
