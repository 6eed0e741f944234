#pragma once

#include "flatring/elliptic.hpp"

namespace flatring {

struct CartesianPoint {
    double x;
    double y;
    double z;
};

// Extension of the (s, t) chart beyond the first quadrant.
//   V1: s in (-2K, 2K), t in (0, K')
//   V2: s in (0, 2K),   t in (-K', K')
//   V3: s in (0, 4K),   t in (0, K')
enum class Variant { V1, V2, V3 };

// Quadrant of the meridian half-plane relative to the unit circle; the
// algebraic coordinates are the same for all four and the tag restores signs.
enum class Quadrant { InnerUpper, OuterUpper, OuterLower, InnerLower };

// Flat-ring cyclide coordinates. tau_c = K' - |t| is carried alongside t so
// points close to the z-axis keep full relative accuracy.
struct FlatRingPoint {
    double s;
    double t;
    double phi;
    Modulus modulus;
    Variant variant = Variant::V1;
    double tau_c;

    static FlatRingPoint from_st(double s, double t, double phi, const Modulus& m, Variant v = Variant::V1);
    // Point given by its distance tau_c = K' - t from the axis locus.
    static FlatRingPoint from_s_tau(double s, double tau_c, double phi, const Modulus& m, Variant v = Variant::V1);
};

struct AlgebraicFlatRing {
    double mu;
    double rho;
    double phi;
    double a;
};

struct ToroidalPoint {
    double tau;
    double psi;
    double phi;
};

struct MetricCoefficients {
    double h_s;
    double h_t;
    double h_phi;
};

// Jacobi data of a flat-ring point: (sn, cn, dn)(s, k) and (sn, cn, dn)(t, k').
struct FlatRingJacobi {
    JacobiTriple s;
    JacobiTriple t;
};

double cylindrical_radius(const CartesianPoint& q);

// b = (1 - k)/k', the inner radius of the cut annulus.
double cut_radius(const Modulus& m);

CartesianPoint algebraic_to_cartesian(const AlgebraicFlatRing& p, Quadrant quadrant = Quadrant::InnerUpper);

// (mu, rho) of the meridian point (R, z) with R = sqrt(x^2 + y^2).
AlgebraicFlatRing cartesian_to_algebraic(const CartesianPoint& q, double a);

// Quadrant of q; points on the unit circle count as inner, z = 0 as upper.
Quadrant quadrant_of(const CartesianPoint& q);

// Left-hand side of the coordinate-line equation for parameter value tau at
// meridian point (x, z): zero iff (x, z) lies on the tau-line.
double coordline_residual(double x, double z, double a, double tau);

FlatRingJacobi flatring_jacobi(const FlatRingPoint& p);

CartesianPoint flatring_to_cartesian(const FlatRingPoint& p);

// Inverse map for the chosen variant. Throws DomainError for points on (or
// within 1e-10 of) the variant's cut set and on the z-axis.
FlatRingPoint cartesian_to_flatring(const CartesianPoint& q, const Modulus& m, Variant variant = Variant::V1);

// Variant-1 coordinates that tolerate the cut: points on it are assigned t = 0
// (the limit from z > 0). Used where harmonics are continuous across the cut.
FlatRingPoint locate_lenient(const CartesianPoint& q, const Modulus& m);

struct CoordinateSurface {
    enum class Kind { S, T };
    Kind kind;
    double value;
};

// Implicit equation of a coordinate surface, evaluated at q and scaled to be
// dimensionless; zero iff q lies on the surface.
double coordinate_surface_residual(const CartesianPoint& q, const Modulus& m, CoordinateSurface surface);

MetricCoefficients metric_h(const FlatRingPoint& p);

CartesianPoint toroidal_to_cartesian(const ToroidalPoint& p);
ToroidalPoint cartesian_to_toroidal(const CartesianPoint& q);

// chi = (R^2 + R*^2 + (z - z*)^2) / (2 R R*) from cylindrical coordinates.
double chi_cylindrical(double R, double z, double R_star, double z_star);

// Same quantity expressed through the Jacobi data of both points.
double chi_flatring(const FlatRingPoint& p, const FlatRingPoint& q);

}  // namespace flatring
