#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "parabolic/collar_modulus.hpp"
#include "parabolic/graph_modulus.hpp"

namespace parabolic {

struct Point {
    double x = 0.0, y = 0.0;
};

using PointPredicate = std::function<bool(Point)>;

// Zero-width barrier held at the potential of electrode b.
struct Slit {
    Point a, b;
};

// Planar domain sampled on a cell-centred grid. Edges leaving the domain end on
// electrode a (u = 0), electrode b (u = 1) or an insulated boundary, decided by the
// electrode predicates at the crossing point (evaluated just outside the domain).
struct GridDomain {
    std::string name;
    double h = 0.0;
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    PointPredicate inside;
    PointPredicate electrode_a, electrode_b;
    std::optional<double> periodic_x;  // identify x ~ x + period; box width must equal the period
    std::vector<Slit> slits;
    // Thinnest feature the grid must resolve with at least 3 cells (0 = unchecked).
    double min_feature = 0.0;
};

enum class Preconditioner { None, Jacobi, Multigrid };

struct OracleOptions {
    int levels = 2;  // meshes h, h/2, ...
    double cg_tol = 1e-10;
    int max_iter = 200000;
    Preconditioner preconditioner = Preconditioner::Multigrid;
};

struct ModulusEstimate {
    double value = 0.0;
    std::vector<double> meshes;
    std::vector<double> level_values;
    std::vector<int> iterations;
    std::vector<std::size_t> unknowns;
    bool extrapolated = false;
    double error_bar = 0.0;
};

// Discrete Dirichlet energy on each mesh, then Richardson extrapolation of the last
// two levels assuming first-order convergence.
ModulusEstimate discrete_modulus(const GridDomain& domain, const OracleOptions& options = {});

// Energy at a single mesh (no refinement).
double discrete_energy(const GridDomain& domain, const OracleOptions& options = {}, int* iterations = nullptr);

// Same domain with the electrodes exchanged.
GridDomain swap_electrodes(GridDomain d);

GridDomain rectangle_domain(double width, double height, double h);
GridDomain annulus_domain(double r1, double r2, double h);
// Sector r1 < |z| < r2, phi0 < arg z < phi0 + theta; electrodes are the radial sides.
GridDomain sector_domain(double r1, double r2, double phi0, double theta, double h);
// Standard half collar of a geodesic of length l in the upper half plane: the sector
// between the imaginary axis and the equidistant ray, r2 / r1 = e^l.
GridDomain maskit_sector_domain(double l, double h);

struct CombGeometry {
    int n_eps = 0;       // N = ceil(1/eps^2)
    int slit_count = 0;  // slits at x = k/N, k = 2, ..., N - 1
};
CombGeometry comb_geometry(double epsilon);
// Rectangle [0,1] x [0,eps] minus vertical slits from height eps^2 to eps; electrode
// b is the top side together with the slits, electrode a the bottom. h defaults to
// the largest mesh 1/(N m) with at least 3 cells below the slit tips.
GridDomain comb_domain(double epsilon, double h = 0.0);

// Periodic region between the graphs of a pair over one period; electrodes are the graphs.
GridDomain graph_domain(const PeriodicFunctionPair& pair, double h);
// Lift of a collar to the logarithmic-coordinate strip, one period wide.
GridDomain collar_domain(const std::variant<HalfCollarSpec, GluedCollarSpec>& spec, double h);

// Smallest gap f - g over a period (dense scan plus local refinement).
double minimum_gap(const PeriodicFunctionPair& pair);

}  // namespace parabolic
