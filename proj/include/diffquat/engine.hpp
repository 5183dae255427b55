#pragma once

#include "diffquat/odesolve.hpp"

namespace diffquat {

// Tower-step suggestions supplied with a problem. Radical hints are adjoined
// up front; primitive and hyperexponential hints are consulted during the
// solution search and adjoined only when they produce a solution.
struct Hints {
    struct RadicalHint {
        int n;
        RatFunc f;
    };
    std::vector<RadicalHint> radicals;
    std::vector<RatFunc> primitives; // rates w of candidate primitive steps
    std::vector<RatFunc> hyperexps;  // rates of candidate hyperexponential steps
    bool riccati_auto = false;       // generic adjunction is always available; kept for the hint syntax
};

struct EngineOptions {
    int n_max = 16;
    int degree_bound = 4;
    long budget = 10000;
};

struct SplitCertificate {
    QuatAlgebra algebra;
    DerivationSpec spec;
    TowerPtr tower;
    TowerElem xi;
    Mat2 p;
    TowerElem lambda1, lambda2;
    TowerElem mu, mu_rate;
    Mat2 f;
    bool verified = false;
    int trdeg = 0;
    std::vector<std::string> notes;
};

// Pipeline: resolve xi; find two distinct solutions of the splitting Riccati
// (rational solver, +-sqrt pattern, radical search for the linear case, user
// hints, then generic transcendental adjunction); obtain mu; assemble
//   F = [[l1 mu, l2/(mu(l1-l2))], [mu, 1/(mu(l1-l2))]]
// and verify det F = 1 and F' = P F exactly. Throws when the constructed
// certificate fails its own verification.
SplitCertificate construct_certificate(const QuatAlgebra& alg, const DerivationSpec& spec,
                                       const Hints& hints = {}, const EngineOptions& opt = {});

struct CertVerifyReport {
    bool pass = false;
    bool det_nonzero = false;
    bool det_is_one = false;
    bool derivation_ok = false;
    std::string first_failure; // empty when pass
};
// Recomputes P from (algebra, spec, xi) and checks the certificate data.
CertVerifyReport verify_certificate(const SplitCertificate& cert);

// Solutions read off a verified F: ratios f11/f21, f12/f22 solve the splitting
// Riccati; in the a2 = a3 = 0 branch the entries f11, f12, f21^-1, f22^-1
// additionally solve the linear equation X' = (a1 xi + beta'/(4 beta)) X.
struct FSolutions {
    std::vector<TowerElem> ratio;
    std::vector<TowerElem> eigen;
    bool linear_branch = false;
    std::vector<std::string> notes;
};
FSolutions riccati_from_F(const SplitCertificate& cert);

// U = F diag(theta,-theta) F^-1, V = F antidiag(theta,theta) F^-1 for a theta
// with theta' = mu_rate * theta; checks U^2 = V^2 = theta^2, VU = -UV and
// d_P(U) = (theta'/theta) U, then pulls both back through phi.
struct Standardized {
    Mat2 u_mat, v_mat;
    QuatElem u_tilde, v_tilde;
    TowerElem theta_sq;
};
Standardized standardize_from_split(const SplitCertificate& cert, const TowerElem& theta);

// Transcendence degree of the certificate tower; engine-constructed towers
// stay at or below 3.
int trdeg_report(const SplitCertificate& cert);

} // namespace diffquat
