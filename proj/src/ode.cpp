#include "holoprec/ode.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

namespace holoprec {

ThetaODE make_theta_ode(std::vector<GiPoly> coeffs) {
    if (coeffs.empty()) throw NotOrdinaryError("operator has no coefficients");
    while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
    ThetaODE ode;
    ode.order = coeffs.size() - 1;
    if (ode.order == 0) throw NotOrdinaryError("operator order must be positive");
    const GiPoly& lead = coeffs.back();
    if (lead.is_zero() || lead.coeff(0).is_zero()) {
        throw NotOrdinaryError("0 is not an ordinary point: a_r(0) = 0");
    }
    std::int64_t s = 0;
    ode.h1 = 1;
    for (const auto& a : coeffs) {
        s = std::max(s, a.degree());
        ode.h1 = std::max(ode.h1, a.max_coeff_bit_size());
    }
    ode.degree = std::max<std::size_t>(static_cast<std::size_t>(s), ode.order);
    ode.coeffs = std::move(coeffs);
    return ode;
}

ThetaODE theta_from_dz(const std::vector<GiPoly>& dz_coeffs) {
    if (dz_coeffs.empty()) throw NotOrdinaryError("operator has no coefficients");
    std::size_t r = dz_coeffs.size() - 1;
    if (r == 0) throw NotOrdinaryError("operator order must be positive");
    if (dz_coeffs[r].is_zero() || dz_coeffs[r].coeff(0).is_zero()) {
        throw NotOrdinaryError("0 is not an ordinary point: c_r(0) = 0");
    }
    // z^r sum_k c_k(z) (d/dz)^k = sum_k c_k(z) z^{r-k} th(th-1)...(th-k+1),
    // so a_j(z) = sum_k c_k(z) z^{r-k} * [th^j] fall_k(th).
    std::vector<GiPoly> a(r + 1);
    GiPoly falling = GiPoly::constant(GaussianInt(1));  // fall_0 = 1
    for (std::size_t k = 0; k <= r; ++k) {
        if (k > 0) {
            // fall_k = fall_{k-1} * (th - (k-1))
            GiPoly lin(std::vector<GaussianInt>{GaussianInt(-(static_cast<long>(k) - 1)),
                                                GaussianInt(1)});
            falling = falling * lin;
        }
        if (dz_coeffs[k].is_zero()) continue;
        GiPoly zpart = dz_coeffs[k].shifted_up(r - k);
        for (std::size_t j = 0; j <= k; ++j) {
            const GaussianInt& st = falling.coeff(j);
            if (st.is_zero()) continue;
            a[j] = a[j] + zpart.scaled(st);
        }
    }
    return make_theta_ode(std::move(a));
}

Recurrence derive_recurrence(const ThetaODE& ode) {
    Recurrence rec;
    rec.order = ode.order;
    rec.degree = ode.degree;
    rec.h1 = ode.h1;
    rec.b.resize(ode.degree + 1);
    // b_j(n) = sum_k a_{k,j} (n + r - j)^k
    for (std::size_t j = 0; j <= ode.degree; ++j) {
        GiPoly bj;
        GiPoly shift(std::vector<GaussianInt>{
            GaussianInt(Int(static_cast<long>(ode.order) - static_cast<long>(j)), Int(0)),
            GaussianInt(1)});  // n + (r - j)
        GiPoly power = GiPoly::constant(GaussianInt(1));
        for (std::size_t k = 0; k <= ode.order; ++k) {
            if (k > 0) power = power * shift;
            const GaussianInt& akj = ode.coeffs[k].coeff(j);
            if (!akj.is_zero()) bj = bj + power.scaled(akj);
        }
        rec.b[j] = std::move(bj);
    }
    return rec;
}

GaussianInt Recurrence::lead_at(std::int64_t n) const {
    GaussianInt v = b[0].eval(Int(n));
    if (v.is_zero()) throw SingularRecurrenceError(n);
    return v;
}

EvalPoint make_eval_point(const GaussianRational& zeta, const ThetaODE& ode,
                          bool assume_in_disk) {
    EvalPoint pt;
    GaussianRational z = zeta.normalized();
    pt.zeta = z;
    pt.zeta_num = z.num;
    pt.zeta_den = z.den;
    pt.h2 = bit_size(z);
    pt.assume_in_disk = assume_in_disk;
    RadiusBound rb = radius_lower_bound(ode);
    if (!rb.finite) {
        pt.in_disk_by_radius_bound = true;
    } else {
        // |zeta| < L  <=>  norm(zeta_num) * L_den^2 < L_num^2 * zeta_den^2
        Rat lhs(z.num.norm(), z.den * z.den);
        lhs.canonicalize();
        pt.in_disk_by_radius_bound = lhs < rb.lower * rb.lower;
    }
    return pt;
}

InitialVector initial_vector(const ThetaODE& ode,
                             const std::vector<GaussianRational>& inits) {
    if (inits.size() != ode.order) {
        throw ArityError("expected " + std::to_string(ode.order) + " initial values, got " +
                         std::to_string(inits.size()));
    }
    InitialVector out;
    out.v.assign(ode.degree + 1, GaussianRational(0));
    // slots 0..s~-1 hold y_{r-s~} .. y_{r-1}; negative indices stay 0.
    Int fact(1);
    for (std::size_t k = 0; k < ode.order; ++k) {
        if (k > 0) fact *= static_cast<long>(k);
        std::size_t slot = ode.degree - ode.order + k;
        out.v[slot] = GaussianRational(inits[k].num, inits[k].den * fact).normalized();
    }
    return out;
}

RadiusBound radius_lower_bound(const ThetaODE& ode) {
    const GiPoly& ar = ode.coeffs[ode.order];
    RadiusBound out;
    if (ar.degree() == 0) return out;  // no roots: rho = +infinity
    out.finite = true;
    Rat c0 = modulus_lb(ar.coeff(0));
    Rat rest(0);
    for (std::size_t j = 1; j <= static_cast<std::size_t>(ar.degree()); ++j) {
        Rat m(modulus_ub(ar.coeff(j)));
        if (m > rest) rest = m;
    }
    out.lower = c0 / (c0 + rest);
    out.lower.canonicalize();
    return out;
}

GiMatrix hat_step_matrix(const Recurrence& rec, const EvalPoint& pt, std::int64_t n) {
    GaussianInt b0 = rec.lead_at(n);
    std::size_t s = rec.degree;
    GiMatrix m(s + 1);
    GaussianInt zb0 = pt.zeta_num * b0;
    for (std::size_t i = 0; i + 1 < s; ++i) m.at(i, i + 1) = zb0;
    for (std::size_t j = 0; j < s; ++j) {
        const GiPoly& bk = rec.b[s - j];
        if (bk.is_zero()) continue;
        m.at(s - 1, j) = m.at(s - 1, j) + (-(pt.zeta_num * bk.eval(Int(n))));
    }
    GaussianInt corner = pt.zeta_den * b0;
    m.at(s, s - rec.order) = corner;
    m.at(s, s) = corner;
    return m;
}

KMatrix step_matrix(const Recurrence& rec, const EvalPoint& pt, std::int64_t n) {
    GiMatrix hat = hat_step_matrix(rec, pt, n);
    GaussianInt corner = hat.at(rec.degree, rec.degree);
    GaussianInt cc = corner.conj();
    Int nrm = corner.norm();
    KMatrix out(hat.dim());
    for (std::size_t i = 0; i < hat.dim(); ++i) {
        for (std::size_t j = 0; j < hat.dim(); ++j) {
            out.at(i, j) = GaussianRational(hat.at(i, j) * cc, nrm).normalized();
        }
    }
    return out;
}

namespace {

GaussianInt parse_gi_pair(const nlohmann::json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
        throw ParseError(std::string("field 'coeffs': expected [\"re\",\"im\"] pair in ") +
                         where);
    }
    try {
        return {Int(j[0].get<std::string>()), Int(j[1].get<std::string>())};
    } catch (const std::invalid_argument&) {
        throw ParseError(std::string("field 'coeffs': bad integer literal in ") + where);
    }
}

}  // namespace

OdeInput parse_ode_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("form") || !j["form"].is_string()) {
        throw ParseError("field 'form': expected \"theta\" or \"dz\"");
    }
    std::string form = j["form"].get<std::string>();
    if (form != "theta" && form != "dz") {
        throw ParseError("field 'form': expected \"theta\" or \"dz\", got \"" + form + "\"");
    }
    if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
        throw ParseError("field 'coeffs': expected a non-empty array of polynomials");
    }
    std::vector<GiPoly> coeffs;
    for (std::size_t k = 0; k < j["coeffs"].size(); ++k) {
        const auto& jp = j["coeffs"][k];
        if (!jp.is_array()) throw ParseError("field 'coeffs': polynomial must be an array");
        std::vector<GaussianInt> cs;
        for (const auto& pair : jp) {
            cs.push_back(parse_gi_pair(pair, ("coeffs[" + std::to_string(k) + "]").c_str()));
        }
        coeffs.emplace_back(std::move(cs));
    }
    OdeInput out;
    out.ode = form == "theta" ? make_theta_ode(std::move(coeffs)) : theta_from_dz(coeffs);
    if (j.contains("initial_values")) {
        if (!j["initial_values"].is_array()) {
            throw ParseError("field 'initial_values': expected an array of strings");
        }
        for (const auto& s : j["initial_values"]) {
            if (!s.is_string()) {
                throw ParseError("field 'initial_values': expected an array of strings");
            }
            out.initial_values.push_back(parse_gaussian_rational(s.get<std::string>()));
        }
    }
    if (j.contains("point")) {
        if (!j["point"].is_string()) throw ParseError("field 'point': expected a string");
        out.point = parse_gaussian_rational(j["point"].get<std::string>());
        out.has_point = true;
    }
    return out;
}

std::string ode_to_json(const ThetaODE& ode, const std::vector<GaussianRational>& inits,
                        const GaussianRational* point) {
    nlohmann::json j;
    j["form"] = "theta";
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& a : ode.coeffs) {
        nlohmann::json poly = nlohmann::json::array();
        for (std::int64_t k = 0; k <= std::max<std::int64_t>(a.degree(), 0); ++k) {
            const GaussianInt& c = a.coeff(static_cast<std::size_t>(k));
            poly.push_back({c.re.get_str(), c.im.get_str()});
        }
        coeffs.push_back(std::move(poly));
    }
    j["coeffs"] = std::move(coeffs);
    nlohmann::json iv = nlohmann::json::array();
    for (const auto& l : inits) iv.push_back(to_string(l));
    j["initial_values"] = std::move(iv);
    if (point != nullptr) j["point"] = to_string(*point);
    return j.dump(2);
}

}  // namespace holoprec
