#include "yangian/series.hpp"

#include <algorithm>
#include <sstream>

#include "yangian/errors.hpp"

namespace yangian {

bool ExactRule::holds(const Exponents& e) const {
    Rational s(0);
    for (std::size_t t = 0; t < weights.size(); ++t)
        if (weights[t] != 0) s += Rational(weights[t]) * e[t];
    return s >= threshold;
}

std::string ExactRule::str(const std::vector<std::string>& vars) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t t = 0; t < weights.size(); ++t) {
        if (weights[t] == 0) continue;
        if (weights[t] < 0) os << "-";
        else if (!first) os << "+";
        if (std::abs(weights[t]) != 1) os << std::abs(weights[t]) << "*";
        os << vars[t];
        first = false;
    }
    os << " >= " << threshold;
    return os.str();
}

GenSeries GenSeries::monomial(std::vector<std::string> vars, const Exponents& e, const Rational& c) {
    GenSeries s(std::move(vars));
    s.add_term(e, c);
    return s;
}

GenSeries GenSeries::constant(std::vector<std::string> vars, const Rational& c) {
    Exponents e(vars.size(), Rational(0));
    return monomial(std::move(vars), e, c);
}

GenSeries GenSeries::linear(std::vector<std::string> vars, const std::vector<Rational>& c, const Rational& c0) {
    GenSeries s = constant(vars, c0);
    for (std::size_t t = 0; t < vars.size(); ++t) {
        Exponents e(vars.size(), Rational(0));
        e[t] = Rational(1);
        s.add_term(e, c[t]);
    }
    return s;
}

int GenSeries::var_index(const std::string& name) const {
    for (std::size_t t = 0; t < vars_.size(); ++t)
        if (vars_[t] == name) return static_cast<int>(t);
    throw Error("series has no variable '" + name + "'");
}

void GenSeries::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
}

void GenSeries::add_rule(const ExactRule& r) {
    for (const auto& q : rules_) {
        if (q.weights != r.weights) continue;
        if (q.threshold >= r.threshold) return;
    }
    // keep only the strongest rule per weight vector
    rules_.erase(std::remove_if(rules_.begin(), rules_.end(),
                                [&](const ExactRule& q) { return q.weights == r.weights; }),
                 rules_.end());
    rules_.push_back(r);
    std::sort(rules_.begin(), rules_.end());
}

void GenSeries::add_rules(const std::vector<ExactRule>& rs) {
    for (const auto& r : rs) add_rule(r);
}

void GenSeries::add_lower_bound(int var, const Rational& lo) {
    std::vector<int> w(vars_.size(), 0);
    w[static_cast<std::size_t>(var)] = 1;
    add_rule({w, lo});
}

void GenSeries::add_upper_bound(int var, const Rational& hi) {
    std::vector<int> w(vars_.size(), 0);
    w[static_cast<std::size_t>(var)] = -1;
    add_rule({w, -hi});
}

Rational GenSeries::coefficient(const Exponents& e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

bool GenSeries::exact_at(const Exponents& e) const {
    for (const auto& r : rules_)
        if (!r.holds(e)) return false;
    return true;
}

GenSeries& GenSeries::operator+=(const GenSeries& o) {
    if (vars_.empty() && coeffs_.empty() && rules_.empty()) vars_ = o.vars_;
    if (o.vars_ != vars_) throw Error("series variable mismatch in addition");
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    add_rules(o.rules_);
    return *this;
}

GenSeries& GenSeries::operator-=(const GenSeries& o) { return *this += o.scaled(Rational(-1)); }

GenSeries GenSeries::scaled(const Rational& c) const {
    GenSeries r(vars_);
    r.rules_ = rules_;
    if (c.is_zero()) return r;
    for (const auto& [e, x] : coeffs_) r.coeffs_.emplace(e, x * c);
    return r;
}

std::vector<Rational> GenSeries::max_exponents() const {
    std::vector<Rational> m;
    for (const auto& [e, c] : coeffs_) {
        if (m.empty()) m = e;
        for (std::size_t t = 0; t < e.size(); ++t) m[t] = std::max(m[t], e[t]);
    }
    return m;
}

std::vector<Rational> GenSeries::min_exponents() const {
    std::vector<Rational> m;
    for (const auto& [e, c] : coeffs_) {
        if (m.empty()) m = e;
        for (std::size_t t = 0; t < e.size(); ++t) m[t] = std::min(m[t], e[t]);
    }
    return m;
}

namespace {

// Rule r of one factor, transported to the product given the other factor's
// support extremes. Returns false if the other factor's support is unbounded
// in a direction the rule needs.
bool transport(const ExactRule& r, const std::vector<Rational>& omax, const std::vector<Rational>& omin,
               const std::vector<bool>& o_complete_below, ExactRule& out) {
    out = r;
    if (omax.empty()) return true;
    for (std::size_t t = 0; t < r.weights.size(); ++t) {
        int w = r.weights[t];
        if (w > 0) out.threshold += Rational(w) * omax[t];
        else if (w < 0) {
            if (!o_complete_below[t]) return false;
            out.threshold += Rational(w) * omin[t];
        }
    }
    return true;
}

std::vector<bool> complete_below(const GenSeries& s) {
    std::vector<bool> c(s.nvars(), true);
    for (const auto& r : s.rules())
        for (std::size_t t = 0; t < r.weights.size(); ++t)
            if (r.weights[t] > 0) c[t] = false;
    return c;
}

}  // namespace

GenSeries GenSeries::operator*(const GenSeries& o) const {
    if (o.vars_ != vars_) throw Error("series variable mismatch in product");
    GenSeries r(vars_);
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) {
            Exponents e(e1.size());
            for (std::size_t t = 0; t < e.size(); ++t) e[t] = e1[t] + e2[t];
            r.add_term(e, c1 * c2);
        }
    auto amax = max_exponents(), amin = min_exponents();
    auto bmax = o.max_exponents(), bmin = o.min_exponents();
    auto acomp = complete_below(*this), bcomp = complete_below(o);
    ExactRule t;
    for (const auto& q : rules_) {
        if (!transport(q, bmax, bmin, bcomp, t))
            throw Unsupported("series product: upper-truncated factor times a lower-truncated one");
        r.add_rule(t);
    }
    for (const auto& q : o.rules_) {
        if (!transport(q, amax, amin, acomp, t))
            throw Unsupported("series product: upper-truncated factor times a lower-truncated one");
        r.add_rule(t);
    }
    return r;
}

GenSeries GenSeries::with_vars(const std::vector<std::string>& vars) const {
    std::vector<int> where(vars_.size());
    for (std::size_t t = 0; t < vars_.size(); ++t) {
        auto it = std::find(vars.begin(), vars.end(), vars_[t]);
        if (it == vars.end()) throw Error("with_vars: variable '" + vars_[t] + "' dropped");
        where[t] = static_cast<int>(it - vars.begin());
    }
    GenSeries r(vars);
    for (const auto& [e, c] : coeffs_) {
        Exponents x(vars.size(), Rational(0));
        for (std::size_t t = 0; t < e.size(); ++t) x[static_cast<std::size_t>(where[t])] = e[t];
        r.add_term(x, c);
    }
    for (const auto& q : rules_) {
        ExactRule n{std::vector<int>(vars.size(), 0), q.threshold};
        for (std::size_t t = 0; t < q.weights.size(); ++t) n.weights[static_cast<std::size_t>(where[t])] = q.weights[t];
        r.add_rule(n);
    }
    return r;
}

std::string GenSeries::str() const {
    std::ostringstream os;
    for (const auto& [e, c] : coeffs_) {
        os << c << " *";
        for (std::size_t t = 0; t < e.size(); ++t) os << " " << vars_[t] << "^" << e[t];
        os << "\n";
    }
    for (const auto& r : rules_) os << "exact where " << r.str(vars_) << "\n";
    return os.str();
}

bool Window::contains(const Exponents& e) const {
    for (const auto& x : e)
        if (x < lo || x > hi) return false;
    return true;
}

ResidualSummary residual(const GenSeries& diff, const Window& w) {
    ResidualSummary s;
    for (const auto& [e, c] : diff.coeffs()) {
        if (!w.contains(e) || !diff.exact_at(e)) continue;
        ++s.exact_positions;
        if (c.is_zero()) continue;
        ++s.nonzero;
        if (c.abs() > s.max_abs) {
            s.max_abs = c.abs();
            s.worst = e;
        }
    }
    return s;
}

std::size_t exact_support(const GenSeries& s, const Window& w) {
    std::size_t n = 0;
    for (const auto& [e, c] : s.coeffs())
        if (w.contains(e) && s.exact_at(e)) ++n;
    return n;
}

std::vector<Rational> shifted_power_coeffs(const Rational& e, const Rational& s, int jmax) {
    std::vector<Rational> out;
    if (jmax < 0) return out;
    out.reserve(static_cast<std::size_t>(jmax) + 1);
    Rational c(1);
    for (int j = 0; j <= jmax; ++j) {
        out.push_back(c);
        c = c * (e - Rational(j)) / Rational(j + 1) * s;
        if (c.is_zero() && s.is_zero()) {
            for (int r = j + 1; r <= jmax; ++r) out.push_back(Rational(0));
            break;
        }
    }
    return out;
}

GenSeries delta_series(const Rational& c, const std::string& u, const std::string& v, int ulo, int uhi, int vlo) {
    GenSeries d({u, v});
    for (int a = ulo; a <= uhi; ++a) {
        const int n = -a - 1;
        // (v + c)^n = sum_j binom(n,j) c^j v^{n-j}
        int jmax = n >= 0 ? n : n - vlo;
        auto co = shifted_power_coeffs(Rational(n), c, jmax);
        for (int j = 0; j <= jmax; ++j) d.add_term({Rational(a), Rational(n - j)}, co[static_cast<std::size_t>(j)]);
    }
    d.add_lower_bound(0, Rational(ulo));
    d.add_upper_bound(0, Rational(uhi));
    d.add_lower_bound(1, Rational(vlo));
    return d;
}

GenSeries delta_times(const Rational& c, const std::string& u, const GenSeries& f, int ulo, int uhi,
                      const Rational& vlo) {
    if (f.nvars() != 1) throw Error("delta_times expects a one-variable series");
    const std::string& v = f.vars()[0];
    GenSeries out({u, v});
    // lowest exponent of f known exactly
    Rational flo;
    bool have_lo = false;
    for (const auto& r : f.rules()) {
        if (r.weights[0] <= 0) throw Unsupported("delta_times: f must only be truncated from below");
        Rational b = r.threshold / Rational(r.weights[0]);
        if (!have_lo || b > flo) flo = b;
        have_lo = true;
    }
    for (int a = ulo; a <= uhi; ++a) {
        const int n = -a - 1;
        for (const auto& [e, fc] : f.coeffs()) {
            // f_b' v^{b'} (v + c)^n  ->  v^{b' + n - j}
            Rational top = e[0] + Rational(n);
            long jmax = n >= 0 ? n : static_cast<long>(mpz_class(Rational(top - vlo).floor()).get_si());
            if (jmax < 0) continue;
            auto co = shifted_power_coeffs(Rational(n), c, static_cast<int>(jmax));
            for (long j = 0; j <= jmax; ++j)
                out.add_term({Rational(a), top - Rational(j)}, fc * co[static_cast<std::size_t>(j)]);
        }
    }
    out.add_lower_bound(0, Rational(ulo));
    out.add_upper_bound(0, Rational(uhi));
    out.add_lower_bound(1, vlo);
    if (have_lo) out.add_rule({{1, 1}, flo - Rational(1)});
    return out;
}

}  // namespace yangian
