#include "holoprec/catalog.hpp"

namespace holoprec {

namespace {

GiPoly zpoly(std::initializer_list<long> coeffs) { return GiPoly(coeffs); }

std::vector<CatalogProblem> build() {
    std::vector<CatalogProblem> out;
    {
        // -ln(1 - z) at 1/2: ((1-z) th^2 - th) y = 0, y(0) = 0, y'(0) = 1
        CatalogProblem p;
        p.name = "ln2";
        p.description = "-log(1-z) at z = 1/2 (value ln 2)";
        p.ode = make_theta_ode({zpoly({}), zpoly({-1}), zpoly({1, -1})});
        p.inits = {GaussianRational(0), GaussianRational(1)};
        p.point = GaussianRational(Rat(1, 2), Rat(0));
        out.push_back(std::move(p));
    }
    {
        // exp(z) at 1: (th - z) y = 0, y(0) = 1
        CatalogProblem p;
        p.name = "exp";
        p.description = "exp(z) at z = 1 (value e)";
        p.ode = make_theta_ode({zpoly({0, -1}), zpoly({1})});
        p.inits = {GaussianRational(1)};
        p.point = GaussianRational(1);
        out.push_back(std::move(p));
    }
    {
        // arctan(z) at 1/2: ((1+z^2) th^2 + (z^2-1) th) y = 0, y(0)=0, y'(0)=1
        CatalogProblem p;
        p.name = "arctan";
        p.description = "arctan(z) at z = 1/2";
        p.ode = make_theta_ode({zpoly({}), zpoly({-1, 0, 1}), zpoly({1, 0, 1})});
        p.inits = {GaussianRational(0), GaussianRational(1)};
        p.point = GaussianRational(Rat(1, 2), Rat(0));
        out.push_back(std::move(p));
    }
    {
        // 1/(1-z) at 1/2: ((1-z) th - z) y = 0, y(0) = 1
        CatalogProblem p;
        p.name = "geometric";
        p.description = "1/(1-z) at z = 1/2 (value 2)";
        p.ode = make_theta_ode({zpoly({0, -1}), zpoly({1, -1})});
        p.inits = {GaussianRational(1)};
        p.point = GaussianRational(Rat(1, 2), Rat(0));
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

const std::vector<CatalogProblem>& catalog() {
    static const std::vector<CatalogProblem> problems = build();
    return problems;
}

const CatalogProblem* find_problem(const std::string& name) {
    for (const auto& p : catalog()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

}  // namespace holoprec
