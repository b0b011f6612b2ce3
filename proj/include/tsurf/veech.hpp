#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tsurf/flow.hpp"
#include "tsurf/surface.hpp"

namespace tsurf {

/*
 * Affine self-map of a surface given polygon by polygon: polygon P goes to
 * polygon_map[P], its vertex j to vertex j + shift[P] of the image, and
 * linear * v + offsets[P] is the image point.
 */
struct AffineAuto {
    Mat2 linear;
    std::vector<int> polygon_map;
    std::vector<int> shift;
    std::vector<Vec2> offsets;

    EdgeRef edge_image(const TranslationSurface& s, EdgeRef e) const;
    std::vector<EdgeRef> edge_map(const TranslationSurface& s) const;
    CycNum offset_complex(int p) const { return offsets[p].to_complex(); }
};

// exact check of the vertex equations, gluing equivariance and det = 1
bool verify_auto(const TranslationSurface& s, const AffineAuto& f, std::string* why = nullptr);

struct MulticurveTwistData {
    Vec2 d;
    std::vector<Cylinder> cylinders;
    std::vector<long> powers;
    RealCyc mu;
};

enum class ParabolicStatus { Ok, NotJS, Undetermined, Incommensurable };

struct ParabolicResult {
    ParabolicStatus status = ParabolicStatus::Ok;
    Mat2 matrix;
    MulticurveTwistData twist;
    std::string message;
    bool ok() const { return status == ParabolicStatus::Ok; }
};

// I + (mu / |d|^2) (d)(d_perp)^T, the shear fixing d
Mat2 parabolic_matrix(const Vec2& d, const RealCyc& mu);
ParabolicResult parabolic_element(const TranslationSurface& s, const Vec2& d,
                                  int cap = kDefaultCap);

// witness for the action on homology: core curves with their powers
struct MultitwistRecord {
    Vec2 d;
    std::vector<std::vector<EdgeRef>> cores;
    std::vector<long> powers;
    Mat2 linear;
};
MultitwistRecord multitwist_auto(const TranslationSurface& s, const MulticurveTwistData& twist);

std::vector<Mat2> default_rotations(const TranslationSurface& s);
std::vector<AffineAuto> symmetry_search(const TranslationSurface& s,
                                        const std::vector<Mat2>& candidates);
std::vector<AffineAuto> symmetry_search(const TranslationSurface& s);

enum class MatrixKind { Elliptic, Parabolic, Hyperbolic };

struct Classification {
    MatrixKind kind = MatrixKind::Elliptic;
    RealCyc trace;
    IntPoly trace_min_poly;
    // rational polynomial vanishing at lambda and 1/lambda: x^d m(x + 1/x)
    IntPoly eigen_poly;
    // for hyperbolic: the eigenvalue of larger modulus, and its inverse
    double lambda = 0, lambda_inv = 0;
};

Classification classify(const Mat2& A);
std::string kind_name(MatrixKind k);

Mat2 mirror(const Mat2& A);

struct TraceFieldReport {
    int degree = 1;
    RealCyc primitive;
    IntPoly min_poly;
    std::string generator_description;
};

TraceFieldReport trace_field(const std::vector<RealCyc>& traces);
TraceFieldReport trace_field_from_hyperbolic(const Mat2& A);
// field equality check used by tests: both primitives lie in each other's field
bool same_field(const TraceFieldReport& a, const TraceFieldReport& b);
bool subfield_of(const TraceFieldReport& a, const TraceFieldReport& b);

constexpr int kCrossRatioCap = 2000;
RealCyc cross_ratio(const Vec2& v1, const Vec2& v2, const Vec2& v3, const Vec2& v4);
TraceFieldReport cross_ratio_field(const std::vector<Direction>& slopes, int cap = kCrossRatioCap);

std::complex<double> lambda0(const Eigen::Matrix2d& A);
std::complex<double> mu0(const Eigen::Matrix2d& A);
std::complex<double> lambda0(const Mat2& A);
std::complex<double> mu0(const Mat2& A);
Mat2 iota0(const Mat2& A);
Eigen::Matrix2d iota0(const Eigen::Matrix2d& A);
std::complex<double> cayley(std::complex<double> tau);
Eigen::Matrix2d to_double(const Mat2& A);

std::pair<double, double> cot_geodesic(double theta);

enum class WimanForm { Omega1, OmegaG };
std::pair<Mat2, Mat2> wiman_generators(int g, WimanForm which);

}  // namespace tsurf

namespace tsurf {

// parabolic elements in the directions of saddle connections of length <= bound,
// one per direction, at most max_count
std::vector<ParabolicResult> find_parabolics(const TranslationSurface& s, const RealCyc& bound,
                                             int max_count = 4, int cap = kDefaultCap);

}  // namespace tsurf
