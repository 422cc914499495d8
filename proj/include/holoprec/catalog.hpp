// Built-in problems used by the CLI, the bench harness and the test suite.

#pragma once

#include <string>
#include <vector>

#include "holoprec/ode.hpp"

namespace holoprec {

struct CatalogProblem {
    std::string name;
    std::string description;
    ThetaODE ode;
    std::vector<GaussianRational> inits;
    GaussianRational point;
};

// ln2 (rho = 1), exp (rho = inf), arctan (rho = 1), geometric (rho = 1).
const std::vector<CatalogProblem>& catalog();
const CatalogProblem* find_problem(const std::string& name);

}  // namespace holoprec
