#include "caut/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace caut {

bool GrlexLess::operator()(const Expvec& a, const Expvec& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

IntPoly IntPoly::constant(int nvars, const Int& c) {
    IntPoly p(nvars);
    if (c != 0) p.terms_[Expvec(nvars, 0)] = c;
    return p;
}

IntPoly IntPoly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw index_error("variable index out of range");
    IntPoly p(nvars);
    Expvec e(nvars, 0);
    e[i] = 1;
    p.terms_[e] = 1;
    return p;
}

IntPoly IntPoly::monomial(int nvars, const Expvec& e, const Int& c) {
    IntPoly p(nvars);
    if (static_cast<int>(e.size()) != nvars) throw index_error("exponent vector length mismatch");
    if (c != 0) p.terms_[e] = c;
    return p;
}

bool IntPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Expvec& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

int IntPoly::total_degree() const {
    if (terms_.empty()) return 0;
    const Expvec& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

int IntPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

const Int& IntPoly::coeff(const Expvec& e) const {
    static const Int kZero = 0;
    auto it = terms_.find(e);
    return it == terms_.end() ? kZero : it->second;
}

const Int& IntPoly::leading_coeff() const {
    static const Int kZero = 0;
    if (terms_.empty()) return kZero;
    return terms_.rbegin()->second;
}

const Expvec& IntPoly::leading_exp() const {
    if (terms_.empty()) throw error("leading_exp of zero polynomial");
    return terms_.rbegin()->first;
}

void IntPoly::add_term(const Expvec& e, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void IntPoly::check_compat(const IntPoly& o) const {
    if (nvars_ != o.nvars_)
        throw var_mismatch_error("polynomials over different variable universes");
}

IntPoly IntPoly::operator-() const {
    IntPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    check_compat(o);
    IntPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    check_compat(o);
    IntPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    check_compat(o);
    IntPoly r(nvars_);
    Expvec e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

IntPoly IntPoly::pow(int k) const {
    if (k < 0) throw index_error("negative polynomial power");
    IntPoly r = constant(nvars_, 1);
    IntPoly base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Expvec IntPoly::monomial_content() const {
    Expvec m(nvars_, 0);
    if (terms_.empty()) return m;
    m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    return m;
}

IntPoly IntPoly::divide_by_int(const Int& c) const {
    if (c == 0) throw zero_denominator_error("division by zero integer");
    IntPoly r(nvars_);
    for (const auto& [e, co] : terms_) {
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), co.get_mpz_t(), c.get_mpz_t());
        if (rem != 0) throw error("inexact integer division of polynomial");
        r.terms_[e] = q;
    }
    return r;
}

IntPoly IntPoly::divide_by_monomial(const Expvec& m) const {
    IntPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
        Expvec q(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            q[i] = e[i] - m[i];
            if (q[i] < 0) throw error("inexact monomial division");
        }
        r.terms_[q] = c;
    }
    return r;
}

// Multi-variable exact division by repeatedly cancelling leading terms.
IntPoly IntPoly::divided_by(const IntPoly& o) const {
    check_compat(o);
    if (o.is_zero()) throw zero_denominator_error("polynomial division by zero");
    IntPoly rem = *this;
    IntPoly quot(nvars_);
    const Expvec& lo = o.leading_exp();
    const Int& lc = o.leading_coeff();
    while (!rem.is_zero()) {
        const Expvec& lr = rem.leading_exp();
        Expvec q(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            q[i] = lr[i] - lo[i];
            if (q[i] < 0) throw error("inexact polynomial division");
        }
        Int qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rem.leading_coeff().get_mpz_t(),
                    lc.get_mpz_t());
        if (r != 0) throw error("inexact polynomial division");
        IntPoly t = monomial(nvars_, q, qc);
        quot = quot + t;
        rem = rem - t * o;
    }
    return quot;
}

bool IntPoly::divisible_by(const IntPoly& o) const {
    try {
        (void)divided_by(o);
        return true;
    } catch (const error&) {
        return false;
    }
}

// ---------------------------------------------------------------------------
// gcd machinery

namespace {

Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

IntPoly normalize_sign(const IntPoly& p) {
    if (!p.is_zero() && p.leading_coeff() < 0) return -p;
    return p;
}

// View p as a univariate polynomial in x_v with IntPoly coefficients.
std::vector<IntPoly> univ_coeffs(const IntPoly& p, int v) {
    int d = p.degree_in(v);
    std::vector<IntPoly> out(d + 1, IntPoly(p.nvars()));
    for (const auto& [e, c] : p.terms()) {
        Expvec r = e;
        int dv = r[v];
        r[v] = 0;
        out[dv].add_term(r, c);
    }
    return out;
}

IntPoly from_univ(const std::vector<IntPoly>& cs, int v, int nvars) {
    IntPoly p(nvars);
    for (int d = 0; d < static_cast<int>(cs.size()); ++d) {
        for (const auto& [e, c] : cs[d].terms()) {
            Expvec r = e;
            r[v] += d;
            p.add_term(r, c);
        }
    }
    return p;
}

IntPoly shift_var(const IntPoly& coeff, int v, int d) {
    IntPoly p(coeff.nvars());
    for (const auto& [e, c] : coeff.terms()) {
        Expvec r = e;
        r[v] += d;
        p.add_term(r, c);
    }
    return p;
}

// Pseudo-remainder of a by b in variable v: lc(b)^(da-db+1) * a = q*b + rem.
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b, int v) {
    int db = b.degree_in(v);
    auto bc = univ_coeffs(b, v);
    const IntPoly& lb = bc[db];
    IntPoly rem = a;
    int da = a.degree_in(v);
    int steps = da - db + 1;
    while (!rem.is_zero() && rem.degree_in(v) >= db) {
        int dr = rem.degree_in(v);
        auto rc = univ_coeffs(rem, v);
        rem = rem * lb - shift_var(rc[dr], v, dr - db) * b;
        --steps;
    }
    // pad remaining factors so the standard subresultant divisions stay exact
    for (; steps > 0; --steps) rem = rem * lb;
    return rem;
}

IntPoly content_wrt(const IntPoly& p, int v) {
    auto cs = univ_coeffs(p, v);
    IntPoly g(p.nvars());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (!g.is_zero() && g.is_constant() && g.leading_coeff() == 1) break;
    }
    return g;
}

// Subresultant PRS for primitive inputs in variable v; returns a gcd of the
// primitive parts. Knuth vol 2 / Geddes-Czapor-Labahn form.
IntPoly prs_gcd(IntPoly a, IntPoly b, int v) {
    if (a.degree_in(v) < b.degree_in(v)) std::swap(a, b);
    int nvars = a.nvars();
    IntPoly g = IntPoly::constant(nvars, 1);
    IntPoly h = IntPoly::constant(nvars, 1);
    while (true) {
        int delta = a.degree_in(v) - b.degree_in(v);
        IntPoly rem = pseudo_rem(a, b, v);
        if (rem.is_zero()) break;
        if (rem.degree_in(v) == 0) return IntPoly::constant(nvars, 1);
        a = b;
        IntPoly divisor = g * h.pow(delta);
        b = rem.divided_by(divisor);
        g = univ_coeffs(a, v)[a.degree_in(v)];
        if (delta > 0) {
            IntPoly gd = g.pow(delta);
            h = (delta == 1) ? gd : gd.divided_by(h.pow(delta - 1));
        }
    }
    // primitive part of b w.r.t. v
    IntPoly cont = content_wrt(b, v);
    return b.divided_by(cont);
}

} // namespace

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    if (a.nvars() != b.nvars())
        throw var_mismatch_error("gcd of polynomials over different universes");
    int nvars = a.nvars();
    if (a.is_zero()) return normalize_sign(b);
    if (b.is_zero()) return normalize_sign(a);

    Expvec ma = a.monomial_content(), mb = b.monomial_content();
    Expvec mg(nvars);
    for (int i = 0; i < nvars; ++i) mg[i] = std::min(ma[i], mb[i]);
    IntPoly pa = a.divide_by_monomial(ma);
    IntPoly pb = b.divide_by_monomial(mb);

    Int ca = pa.content(), cb = pb.content();
    Int cg = int_gcd(ca, cb);
    pa = pa.divide_by_int(ca);
    pb = pb.divide_by_int(cb);

    IntPoly result;
    if (pa.is_constant() || pb.is_constant()) {
        result = IntPoly::constant(nvars, 1);
    } else {
        int v = -1;
        for (int i = nvars - 1; i >= 0; --i) {
            if (pa.degree_in(i) > 0 && pb.degree_in(i) > 0) {
                v = i;
                break;
            }
        }
        if (v < 0) {
            // no shared variable: contents only
            result = IntPoly::constant(nvars, 1);
        } else {
            IntPoly conta = content_wrt(pa, v);
            IntPoly contb = content_wrt(pb, v);
            IntPoly ppa = pa.divided_by(conta);
            IntPoly ppb = pb.divided_by(contb);
            result = poly_gcd(conta, contb) * prs_gcd(ppa, ppb, v);
        }
    }
    result = result * IntPoly::monomial(nvars, mg, cg);
    return normalize_sign(result);
}

// ---------------------------------------------------------------------------
// RationalFn

RationalFn RationalFn::make(const IntPoly& num, const IntPoly& den) {
    if (num.nvars() != den.nvars())
        throw var_mismatch_error("rational function parts over different universes");
    if (den.is_zero()) throw zero_denominator_error("zero denominator");
    int nvars = num.nvars();
    RationalFn f;
    if (num.is_zero()) {
        f.num_ = IntPoly::zero(nvars);
        f.den_ = IntPoly::constant(nvars, 1);
        return f;
    }
    // split off monomial contents, then try exact division of the残 parts
    // before falling back to the full gcd; with Laurent-phenomenon workloads
    // one side almost always divides the other
    Expvec mn = num.monomial_content(), md = den.monomial_content();
    Expvec common(nvars);
    for (int i = 0; i < nvars; ++i) {
        common[i] = std::min(mn[i], md[i]);
        mn[i] -= common[i];
        md[i] -= common[i];
    }
    IntPoly nu = num.divide_by_monomial(num.monomial_content());
    IntPoly de = den.divide_by_monomial(den.monomial_content());
    bool reduced = false;
    if (de.term_count() > 1 && nu.term_count() >= de.term_count()) {
        try {
            nu = nu.divided_by(de);
            de = IntPoly::constant(nvars, 1);
            reduced = true;
        } catch (const error&) {
        }
    }
    if (!reduced && nu.term_count() > 1 && de.term_count() >= nu.term_count()) {
        try {
            de = de.divided_by(nu);
            nu = IntPoly::constant(nvars, 1);
            reduced = true;
        } catch (const error&) {
        }
    }
    if (reduced) {
        Int cn = nu.content(), cd = de.content();
        Int g;
        mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
        f.num_ = nu.divide_by_int(g) * IntPoly::monomial(nvars, mn, 1);
        f.den_ = de.divide_by_int(g) * IntPoly::monomial(nvars, md, 1);
    } else {
        IntPoly rnum = nu * IntPoly::monomial(nvars, mn, 1);
        IntPoly rden = de * IntPoly::monomial(nvars, md, 1);
        IntPoly g = poly_gcd(rnum, rden);
        f.num_ = rnum.divided_by(g);
        f.den_ = rden.divided_by(g);
    }
    if (f.den_.leading_coeff() < 0) {
        f.num_ = -f.num_;
        f.den_ = -f.den_;
    }
    return f;
}

RationalFn RationalFn::from_poly(const IntPoly& p) {
    RationalFn f;
    f.num_ = p;
    f.den_ = IntPoly::constant(p.nvars(), 1);
    return f;
}

RationalFn RationalFn::variable(int nvars, int i) {
    return from_poly(IntPoly::variable(nvars, i));
}

RationalFn RationalFn::constant(int nvars, const Int& c) {
    return from_poly(IntPoly::constant(nvars, c));
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
    return make(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator*(const RationalFn& o) const {
    return make(num_ * o.num_, den_ * o.den_);
}

RationalFn RationalFn::operator/(const RationalFn& o) const {
    if (o.is_zero()) throw zero_denominator_error("division by zero rational function");
    return make(num_ * o.den_, den_ * o.num_);
}

bool RationalFn::operator<(const RationalFn& o) const {
    return to_string() < o.to_string();
}

// ---------------------------------------------------------------------------
// Laurent forms

LaurentForm as_laurent(const RationalFn& f) {
    const IntPoly& den = f.den();
    if (den.term_count() != 1)
        throw not_laurent_error("reduced denominator has more than one term");
    if (den.leading_coeff() != 1)
        throw not_laurent_error("reduced denominator has a non-unit coefficient");
    LaurentForm lf;
    lf.numerator = f.num();
    lf.denominator_exponents = den.leading_exp();
    return lf;
}

bool is_laurent(const RationalFn& f) {
    return f.den().term_count() == 1 && f.den().leading_coeff() == 1;
}

bool is_positive_laurent(const RationalFn& f) {
    if (!is_laurent(f)) return false;
    for (const auto& [e, c] : f.num().terms())
        if (c < 0) return false;
    return true;
}

namespace {

// numerator over a monomial denominator with an integer scale
struct MonomialFraction {
    IntPoly num;
    Expvec den_exp;
    Int den_coeff = 1;
};

} // namespace

RationalFn substitute(const RationalFn& f, const std::vector<RationalFn>& assignment) {
    int nvars = f.nvars();
    if (static_cast<int>(assignment.size()) != nvars)
        throw var_mismatch_error("assignment does not cover the variable universe");
    int target_nvars = nvars == 0 ? 0 : assignment[0].nvars();
    for (const auto& g : assignment)
        if (g.nvars() != target_nvars)
            throw var_mismatch_error("assignment images over different universes");

    bool all_monomial_dens = std::all_of(assignment.begin(), assignment.end(),
                                         [](const RationalFn& g) {
                                             return g.den().term_count() == 1;
                                         });

    // memoized numerator powers when all denominators are monomials: the
    // whole evaluation then runs over a common monomial denominator and a
    // single reduction at the end, avoiding per-term gcds
    if (all_monomial_dens) {
        std::vector<std::vector<IntPoly>> npows(nvars);
        auto num_power = [&](int i, int e) -> const IntPoly& {
            auto& ps = npows[i];
            if (ps.empty()) ps.push_back(IntPoly::constant(target_nvars, 1));
            while (static_cast<int>(ps.size()) <= e)
                ps.push_back(ps.back() * assignment[i].num());
            return ps[e];
        };
        auto term_denominator = [&](const Expvec& e, Expvec& exp_out) {
            exp_out.assign(target_nvars, 0);
            Int coeff = 1;
            for (int i = 0; i < nvars; ++i) {
                if (e[i] == 0) continue;
                const Expvec& m = assignment[i].den().leading_exp();
                for (int v = 0; v < target_nvars; ++v) exp_out[v] += e[i] * m[v];
                Int dc = assignment[i].den().leading_coeff();
                for (int t = 0; t < e[i]; ++t) coeff *= dc;
            }
            return coeff;
        };
        auto eval_poly = [&](const IntPoly& p) {
            MonomialFraction acc;
            acc.num = IntPoly::zero(target_nvars);
            acc.den_exp.assign(target_nvars, 0);
            // common denominator over all terms first, then one in-place
            // accumulation pass
            Expvec td(target_nvars);
            for (const auto& [e, c] : p.terms()) {
                Int tc = term_denominator(e, td);
                for (int v = 0; v < target_nvars; ++v)
                    acc.den_exp[v] = std::max(acc.den_exp[v], td[v]);
                Int g;
                mpz_gcd(g.get_mpz_t(), acc.den_coeff.get_mpz_t(), tc.get_mpz_t());
                acc.den_coeff = acc.den_coeff / g * tc;
            }
            for (const auto& [e, c] : p.terms()) {
                Int tc = term_denominator(e, td);
                IntPoly tn = IntPoly::constant(target_nvars, c);
                for (int i = 0; i < nvars; ++i)
                    if (e[i] > 0) tn = tn * num_power(i, e[i]);
                Expvec up(target_nvars);
                for (int v = 0; v < target_nvars; ++v) up[v] = acc.den_exp[v] - td[v];
                Int scale = acc.den_coeff / tc;
                for (const auto& [te, tcoef] : tn.terms()) {
                    Expvec shifted = te;
                    for (int v = 0; v < target_nvars; ++v) shifted[v] += up[v];
                    acc.num.add_term(shifted, tcoef * scale);
                }
            }
            return acc;
        };
        MonomialFraction num = eval_poly(f.num());
        MonomialFraction den = eval_poly(f.den());
        if (den.num.is_zero())
            throw zero_denominator_error("substituted denominator is identically zero");
        IntPoly dden = IntPoly::monomial(target_nvars, den.den_exp, den.den_coeff);
        IntPoly nden = IntPoly::monomial(target_nvars, num.den_exp, num.den_coeff);
        // Laurent images of Laurent values: the denominator evaluation
        // usually divides the numerator exactly, leaving only a monomial
        IntPoly full_num = num.num * dden;
        try {
            IntPoly quot = full_num.divided_by(den.num);
            return RationalFn::make(quot, nden);
        } catch (const error&) {
            return RationalFn::make(full_num, nden * den.num);
        }
    }

    std::vector<std::vector<RationalFn>> pows(nvars);
    auto power = [&](int i, int e) -> const RationalFn& {
        auto& ps = pows[i];
        if (ps.empty()) ps.push_back(RationalFn::constant(target_nvars, 1));
        while (static_cast<int>(ps.size()) <= e) ps.push_back(ps.back() * assignment[i]);
        return ps[e];
    };
    auto eval_poly = [&](const IntPoly& p) {
        RationalFn acc = RationalFn::constant(target_nvars, 0);
        for (const auto& [e, c] : p.terms()) {
            RationalFn term = RationalFn::constant(target_nvars, c);
            for (int i = 0; i < nvars; ++i)
                if (e[i] > 0) term = term * power(i, e[i]);
            acc = acc + term;
        }
        return acc;
    };
    RationalFn dn = eval_poly(f.den());
    if (dn.is_zero())
        throw zero_denominator_error("substituted denominator is identically zero");
    return eval_poly(f.num()) / dn;
}

// ---------------------------------------------------------------------------
// text format

std::string IntPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int ac = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool has_var = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
        bool wrote = false;
        if (!has_var || ac != 1) {
            out << ac.get_str();
            wrote = true;
        }
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (wrote) out << "*";
            out << "x" << (i + 1);
            if (e[i] > 1) out << "^" << e[i];
            wrote = true;
        }
    }
    return out.str();
}

std::string RationalFn::to_string() const {
    if (den_.is_constant() && den_.leading_coeff() == 1) return num_.to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    int nvars;

    explicit Parser(const std::string& str, int n) : s(str), nvars(n) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    Int parse_int() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw input_error("expected integer at '" + s.substr(start) + "'");
        return Int(s.substr(start, pos - start));
    }

    // term := [int] {[*] x<i> [^int]}*
    void parse_term(IntPoly& acc, int sign) {
        Int coef = 1;
        Expvec e(nvars, 0);
        bool any = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coef = parse_int();
            any = true;
        }
        while (true) {
            skip_ws();
            size_t save = pos;
            if (eat('*')) skip_ws();
            if (pos < s.size() && s[pos] == 'x') {
                ++pos;
                size_t start = pos;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                if (pos == start) throw input_error("bad variable reference");
                int idx = std::stoi(s.substr(start, pos - start)) - 1;
                if (idx < 0 || idx >= nvars) throw input_error("variable index out of context");
                int ex = 1;
                if (eat('^')) ex = static_cast<int>(parse_int().get_si());
                e[idx] += ex;
                any = true;
            } else {
                pos = save;
                break;
            }
        }
        if (!any) throw input_error("empty term in polynomial");
        acc.add_term(e, sign < 0 ? Int(-coef) : coef);
    }

    IntPoly parse_poly_body() {
        IntPoly acc(nvars);
        int sign = 1;
        if (eat('-')) sign = -1;
        else eat('+');
        parse_term(acc, sign);
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos;
                parse_term(acc, 1);
            } else if (c == '-') {
                ++pos;
                parse_term(acc, -1);
            } else {
                break;
            }
        }
        return acc;
    }
};

} // namespace

IntPoly parse_poly(const std::string& str, int nvars) {
    Parser p(str, nvars);
    IntPoly r = p.parse_poly_body();
    p.skip_ws();
    if (p.pos != str.size()) throw input_error("trailing characters in polynomial: " + str);
    return r;
}

RationalFn parse_ratfn(const std::string& str, int nvars) {
    Parser p(str, nvars);
    auto group = [&]() {
        if (p.eat('(')) {
            IntPoly r = p.parse_poly_body();
            if (!p.eat(')')) throw input_error("missing ')' in rational function");
            return r;
        }
        return p.parse_poly_body();
    };
    IntPoly num = group();
    IntPoly den = IntPoly::constant(nvars, 1);
    if (p.eat('/')) den = group();
    p.skip_ws();
    if (p.pos != str.size()) throw input_error("trailing characters in rational function: " + str);
    return RationalFn::make(num, den);
}

} // namespace caut
