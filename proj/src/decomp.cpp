#include "diffquat/decomp.hpp"

#include <algorithm>
#include <map>

namespace diffquat {

Poly SquarefreeFactorization::reconstruct() const {
    Poly p(content);
    for (const auto& [f, m] : factors) p = p * f.pow(m);
    return p;
}

SquarefreeFactorization squarefree_factor(const Poly& p) {
    if (p.is_zero()) throw MathError("squarefree factorization of zero");
    SquarefreeFactorization out;
    out.content = p.lc();
    Poly f = p.monic();
    if (f.degree() == 0) return out;
    // Yun's algorithm.
    Poly fp = f.derivative();
    Poly g = poly_gcd(f, fp);
    Poly w = exact_div(f, g);
    Poly y = exact_div(fp, g);
    int i = 1;
    while (w.degree() > 0) {
        Poly z = y - w.derivative();
        Poly fac = poly_gcd(w, z);
        if (fac.degree() > 0) out.factors.emplace_back(fac, i);
        w = exact_div(w, fac);
        y = exact_div(z, fac);
        ++i;
    }
    return out;
}

std::vector<std::pair<Poly, int>> factor_basis(const Poly& p) {
    std::vector<std::pair<Poly, int>> basis;
    auto sqf = squarefree_factor(p);
    for (const auto& [q, m] : sqf.factors) {
        Poly rest = q;
        for (const Rat& r : rational_roots(q)) {
            Poly lin = Poly::from_coeffs({-r, Rat(1)});
            rest = exact_div(rest, lin);
            basis.emplace_back(lin, m);
        }
        if (rest.degree() > 0) basis.emplace_back(rest, m);
    }
    return basis;
}

RatFunc PartialFractions::reconstruct() const {
    RatFunc acc{polynomial_part};
    for (const auto& b : blocks)
        for (std::size_t j = 0; j < b.digits.size(); ++j)
            acc = acc + RatFunc(b.digits[j], b.factor.pow(static_cast<int>(j) + 1));
    return acc;
}

PartialFractions partial_fractions(const RatFunc& f) {
    PartialFractions out;
    auto [quo, rem] = divmod(f.num(), f.den());
    out.polynomial_part = quo;
    if (rem.is_zero()) return out;

    auto basis = factor_basis(f.den());
    // Split rem / den over the coprime basis, one factor-power at a time.
    Poly residual_num = rem;
    Poly residual_den = f.den();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto& [q, m] = basis[i];
        Poly qm = q.pow(m);
        Poly cofactor = exact_div(residual_den, qm);
        Poly local;
        if (cofactor.degree() == 0) {
            local = residual_num * cofactor.lc().inv();
            residual_num = Poly();
        } else {
            // residual_num/(qm*cofactor) = local/qm + rest/cofactor
            ExtGcd eg = poly_ext_gcd(cofactor, qm);
            // eg.s*cofactor + eg.t*qm = 1
            local = divmod(residual_num * eg.s, qm).second;
            residual_num = exact_div(residual_num - local * cofactor, qm);
        }
        residual_den = cofactor;
        // p-adic digits of local over q: local = sum digits[j] q^j, low first.
        std::vector<Poly> digits_low;
        Poly cur = local;
        for (int j = 0; j < m; ++j) {
            auto [dq, dr] = divmod(cur, q);
            digits_low.push_back(dr);
            cur = dq;
        }
        // digits[j] sits over q^(j+1): reverse the base-q order.
        PartialFractions::Block blk;
        blk.factor = q;
        blk.mult = m;
        blk.digits.assign(static_cast<std::size_t>(m), Poly());
        for (int j = 0; j < m; ++j) blk.digits[static_cast<std::size_t>(m - 1 - j)] = digits_low[static_cast<std::size_t>(j)];
        bool all_zero = true;
        for (const auto& d : blk.digits)
            if (!d.is_zero()) all_zero = false;
        if (!all_zero) out.blocks.push_back(std::move(blk));
    }
    return out;
}

RationalResidues rt_rational_residues(const Poly& b, const Poly& p) {
    RationalResidues out;
    out.leftover = p;
    if (b.is_zero()) return out;
    Poly pd = p.derivative();
    int dp = p.degree();
    // R(z) = res_t(p, b - z p') by evaluation / interpolation; deg_z R = deg p.
    // Sample points where deg_t(b - z p') drops would break the interpolation,
    // so they are skipped (at most one such z exists).
    int dstar = std::max(b.degree(), pd.degree());
    std::vector<std::pair<Rat, Rat>> pts;
    for (long k = 0; static_cast<int>(pts.size()) <= dp; ++k) {
        Rat z(k);
        Poly g = b - pd * z;
        if (g.degree() != dstar) continue;
        pts.emplace_back(z, resultant(p, g));
    }
    Poly rz = interpolate(pts);
    for (const Rat& r : rational_roots(rz)) {
        Poly g = b - pd * r;
        Poly q = g.is_zero() ? out.leftover : poly_gcd(g, out.leftover);
        if (q.degree() < 1) continue;
        out.parts.emplace_back(q, r);
        out.leftover = exact_div(out.leftover, q);
    }
    return out;
}

LogDerivParts logderiv_residues(const RatFunc& a) {
    LogDerivParts out;
    PartialFractions pf = partial_fractions(a);
    out.polynomial_part = pf.polynomial_part;
    RatFunc extracted{out.polynomial_part};
    for (const auto& blk : pf.blocks) {
        const Poly& b1 = blk.digits[0]; // numerator over factor^1
        if (b1.is_zero()) continue;
        RationalResidues rr = rt_rational_residues(b1, blk.factor);
        for (auto& [q, r] : rr.parts) {
            out.terms.emplace_back(q, r);
            extracted = extracted + RatFunc(q.derivative(), q) * RatFunc(r);
        }
    }
    out.reduced_remainder = a - extracted;
    std::sort(out.terms.begin(), out.terms.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        return x.first.to_string() < y.first.to_string();
    });
    return out;
}

namespace {

bool is_probable_prime(const mpz_class& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

mpz_class pollard_rho(const mpz_class& n) {
    // Brent's variant; n must be composite and odd.
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        mpz_class saved_x;
        unsigned long power = 1, lam = 0;
        auto step = [&](mpz_class v) {
            mpz_class r = (v * v + c) % n;
            return r;
        };
        x = 2;
        saved_x = x;
        while (d == 1) {
            if (lam == power) {
                saved_x = x;
                power *= 2;
                lam = 0;
            }
            x = step(x);
            ++lam;
            mpz_class diff = x - saved_x;
            if (diff == 0) break; // cycle without factor; retry with next c
            d = gcd_z(diff < 0 ? mpz_class(-diff) : diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
    if (n <= 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (n % p == 0) {
            out[mpz_class(p)] += 1;
            n /= p;
        }
        if (n == 1) return;
    }
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    // trial division a bit further before falling back to rho
    for (long p = 41; p < 100000 && n > 1; p += 2) {
        if (n % p == 0) {
            while (n % p == 0) {
                out[mpz_class(p)] += 1;
                n /= p;
            }
            if (n == 1) return;
            if (is_probable_prime(n)) {
                out[n] += 1;
                return;
            }
        }
        mpz_class psq(p);
        psq *= p;
        if (psq > n) break;
    }
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    mpz_class d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
    std::map<mpz_class, int> fac;
    factor_into(n < 0 ? mpz_class(-n) : n, fac);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : fac) {
        std::size_t base = divs.size();
        mpz_class pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

} // namespace

std::vector<Rat> rational_roots(const Poly& p) {
    if (p.is_zero()) throw MathError("rational roots of the zero polynomial");
    std::vector<Rat> roots;
    // strip t^k
    Poly q = p;
    bool zero_root = false;
    while (!q.is_zero() && q.coeff(0).is_zero()) {
        zero_root = q.degree() > 0;
        q = exact_div(q, Poly::var());
    }
    if (zero_root) roots.push_back(Rat(0));
    if (q.degree() < 1) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    // integer-primitive form; candidates num/den with num | a0, den | lead
    Poly zp = q.primitive_part();
    mpz_class a0 = zp.coeff(0).num();
    mpz_class lead = zp.lc().num();
    for (const mpz_class& dn : positive_divisors(lead)) {
        for (const mpz_class& nm : positive_divisors(a0)) {
            for (int s : {1, -1}) {
                Rat cand(s > 0 ? nm : mpz_class(-nm), dn);
                if (gcd_z(nm, dn) != 1) continue;
                if (q.eval(cand).is_zero()) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::optional<Rat> nth_root_rat(const Rat& r, int n) {
    if (n < 1) return std::nullopt;
    if (n == 1) return r;
    if (r.is_zero()) return Rat(0);
    if (r.sign() < 0 && n % 2 == 0) return std::nullopt;
    mpz_class an = ::abs(r.num()), ad = r.den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), an.get_mpz_t(), static_cast<unsigned long>(n))) return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), ad.get_mpz_t(), static_cast<unsigned long>(n))) return std::nullopt;
    Rat root(rn, rd);
    return r.sign() < 0 ? -root : root;
}

std::optional<RatFunc> nth_root_ratfunc(const RatFunc& f, int n) {
    if (n < 1) return std::nullopt;
    if (n == 1) return f;
    if (f.is_zero()) return RatFunc();
    auto root_poly = [&](const Poly& p) -> std::optional<Poly> {
        auto sqf = squarefree_factor(p);
        auto croot = nth_root_rat(sqf.content, n);
        if (!croot) return std::nullopt;
        Poly out(*croot);
        for (const auto& [fac, m] : sqf.factors) {
            if (m % n != 0) return std::nullopt;
            out = out * fac.pow(m / n);
        }
        return out;
    };
    auto rn = root_poly(f.num());
    if (!rn) return std::nullopt;
    auto rd = root_poly(f.den());
    if (!rd) return std::nullopt;
    RatFunc root(*rn, *rd);
    // canonical representative for even n: positive leading numerator coefficient
    if (n % 2 == 0 && root.num().lc().sign() < 0) root = -root;
    if (root.pow(n) != f) return std::nullopt;
    return root;
}

std::optional<RatFunc> sqrt_ratfunc(const RatFunc& f) { return nth_root_ratfunc(f, 2); }

namespace {
// n = squarefree * square^2 over the integers
std::pair<mpz_class, mpz_class> int_square_split(const mpz_class& n) {
    std::map<mpz_class, int> fac;
    factor_into(n < 0 ? mpz_class(-n) : n, fac);
    mpz_class sf = n < 0 ? -1 : 1, sq = 1;
    for (const auto& [p, e] : fac) {
        for (int k = 0; k + 1 < e; k += 2) sq *= p;
        if (e % 2) sf *= p;
    }
    return {sf, sq};
}
} // namespace

SquareSplit ratfunc_square_split(const RatFunc& f) {
    if (f.is_zero()) throw MathError("square split of zero");
    RatFunc r(Rat(1)), m(Rat(1));
    auto num_sf = squarefree_factor(f.num());
    for (const auto& [q, e] : num_sf.factors) {
        if (e % 2) r = r * RatFunc(q);
        if (e / 2 > 0) m = m * RatFunc(q).pow(e / 2);
    }
    auto den_sf = squarefree_factor(f.den());
    for (const auto& [q, e] : den_sf.factors) {
        // 1/q^e = q^(e mod 2) * (q^-ceil(e/2))^2
        if (e % 2) r = r * RatFunc(q);
        m = m / RatFunc(q).pow((e + 1) / 2);
    }
    Rat c = num_sf.content / den_sf.content;
    auto [sfc_n, sqc_n] = int_square_split(c.num());
    auto [sfc_d, sqc_d] = int_square_split(c.den());
    r = r * RatFunc(Rat(mpz_class(sfc_n * sfc_d)));
    m = m * RatFunc(Rat(sqc_n, mpz_class(sfc_d * sqc_d)));
    return {r, m};
}

} // namespace diffquat
