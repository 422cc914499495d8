// The theta-form operator a_r(z) th^r + ... + a_1(z) th + a_0(z) (th = z d/dz)
// with Gaussian-integer polynomial coefficients, the induced coefficient
// recurrence b_0(n) y_{n+r} + ... + b_s(n) y_{n+r-s} = 0 with
// b_j(n) = sum_k a_{k,j} (n + r - j)^k, and the step matrices
//
//   B(n) = [ zeta*C(n)  0 ]        Bhat(n) = b_0(n) * zc * B(n)
//          [ R          1 ],
//
// whose products advance the state (y_{n+r-s} z^n, ..., y_{n+r-1} z^n, S_n).
// When the z-degree s is smaller than the order r (which happens for valid
// theta-forms), coefficients are padded with zero polynomials up to
// s~ = max(s, r) so the R row keeps its shape.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holoprec/matrix.hpp"
#include "holoprec/poly.hpp"

namespace holoprec {

struct ThetaODE {
    std::vector<GiPoly> coeffs;  // a_0 .. a_r; padded so max degree >= r
    std::size_t order = 0;       // r
    std::size_t degree = 0;      // s~ = max(max_k deg a_k, r)
    std::int64_t h1 = 1;         // max coefficient bit size

    std::size_t state_dim() const { return degree + 1; }  // s~ + 1
};

// Build a ThetaODE from theta-form coefficients; validates a_r != 0 and
// a_r(0) != 0 and computes the padded degree and h1.
ThetaODE make_theta_ode(std::vector<GiPoly> coeffs);

// Convert d/dz-form coefficients c_0..c_r (c_r(0) != 0) to the theta form by
// multiplying through with z^r and expanding z^k (d/dz)^k into falling
// factorials of th.
ThetaODE theta_from_dz(const std::vector<GiPoly>& dz_coeffs);

struct Recurrence {
    std::vector<GiPoly> b;  // b_0 .. b_{s~}, polynomials in n
    std::size_t order = 0;  // r
    std::size_t degree = 0; // s~
    std::int64_t h1 = 1;    // coefficient bit size of the originating operator

    std::size_t state_dim() const { return degree + 1; }
    // b_0(n); throws SingularRecurrenceError when it vanishes.
    GaussianInt lead_at(std::int64_t n) const;
};

Recurrence derive_recurrence(const ThetaODE& ode);

struct EvalPoint {
    GaussianRational zeta;
    GaussianInt zeta_num;  // zeta = zeta_num / zeta_den
    Int zeta_den{1};
    std::int64_t h2 = 1;   // bit size of zeta
    bool in_disk_by_radius_bound = false;
    bool assume_in_disk = false;
};

// Builds the point; in-disk status against the conservative radius bound is
// recorded, not enforced (a verified tail certificate or an explicit
// assume-in-disk flag are the other admission routes).
EvalPoint make_eval_point(const GaussianRational& zeta, const ThetaODE& ode,
                          bool assume_in_disk = false);

struct InitialVector {
    std::vector<GaussianRational> v;  // (y_{r-s~}, ..., y_{r-1}, 0)
};

// v = (y_{r-s~}, ..., y_{r-1}, 0) with y_k = l_k / k! and y_k = 0 for k < 0.
InitialVector initial_vector(const ThetaODE& ode,
                             const std::vector<GaussianRational>& inits);

// Conservative lower bound on the radius of convergence: +infinity when
// deg a_r = 0 (empty optional), else |z| >= |c_0| / (|c_0| + max_{j>=1} |c_j|)
// evaluated with directed rational bounds on the coefficient moduli.
struct RadiusBound {
    bool finite = false;
    Rat lower;  // valid only when finite
};
RadiusBound radius_lower_bound(const ThetaODE& ode);

// B(n) over Q(i); requires b_0(n) != 0.
KMatrix step_matrix(const Recurrence& rec, const EvalPoint& pt, std::int64_t n);

// Bhat(n) = b_0(n) * zeta_den * B(n) over Z[i]; bottom-right entry is
// zeta_den * b_0(n).
GiMatrix hat_step_matrix(const Recurrence& rec, const EvalPoint& pt, std::int64_t n);

// ---- JSON interchange -------------------------------------------------
//
// {"form": "theta"|"dz",
//  "coeffs": [[["re","im"], ...], ...],   outer k = 0..r, inner z-degree
//  "initial_values": ["a/b+c/d*i", ...],
//  "point": "a/b+c/d*i"}

struct OdeInput {
    ThetaODE ode;
    std::vector<GaussianRational> initial_values;
    bool has_point = false;
    GaussianRational point;
};

OdeInput parse_ode_json(const std::string& json_text);
std::string ode_to_json(const ThetaODE& ode, const std::vector<GaussianRational>& inits,
                        const GaussianRational* point);

}  // namespace holoprec
