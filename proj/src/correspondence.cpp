#include "yangian/correspondence.hpp"

#include <algorithm>
#include <sstream>

#include "yangian/cartan.hpp"
#include "yangian/errors.hpp"

namespace yangian {

// ---------------------------------------------------------------- GradedPoly

namespace {
const char* const kVarNames[GradedPoly::NVars] = {"u", "v", "u1", "u2", "h", "c", "B"};
const int kVarDeg[GradedPoly::NVars] = {1, 1, 1, 1, 1, 0, 0};
}  // namespace

GradedPoly::GradedPoly(const Rational& c) {
    if (!c.is_zero()) terms_[Monomial{}] = c;
}

GradedPoly GradedPoly::var(Var x) {
    GradedPoly p;
    Monomial m{};
    m[x] = 1;
    p.terms_[m] = Rational(1);
    return p;
}

GradedPoly GradedPoly::spectral(const std::string& name) {
    for (int x = U; x <= U2; ++x)
        if (name == kVarNames[x]) return var(static_cast<Var>(x));
    throw WrongKind("not a spectral variable: " + name);
}

int GradedPoly::degree(const Monomial& m) {
    int d = 0;
    for (int x = 0; x < NVars; ++x) d += kVarDeg[x] * m[x];
    return d;
}

int GradedPoly::max_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, degree(m));
    return d;
}

GradedPoly GradedPoly::homogeneous(int d) const {
    GradedPoly r;
    for (const auto& [m, c] : terms_)
        if (degree(m) == d) r.terms_[m] = c;
    return r;
}

GradedPoly GradedPoly::truncated(int d) const {
    GradedPoly r;
    for (const auto& [m, c] : terms_)
        if (degree(m) <= d) r.terms_[m] = c;
    return r;
}

Rational GradedPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational GradedPoly::coefficient(Var x) const {
    Monomial m{};
    m[x] = 1;
    return coefficient(m);
}

Rational GradedPoly::constant() const { return coefficient(Monomial{}); }

GradedPoly GradedPoly::substitute(Var x, const Rational& value) const {
    GradedPoly r;
    for (const auto& [m, c] : terms_) {
        Monomial n = m;
        n[x] = 0;
        r.add(n, c * pow(value, m[x]));
    }
    return r;
}

void GradedPoly::add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    Rational& slot = terms_[m];
    slot += c;
    if (slot.is_zero()) terms_.erase(m);
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    GradedPoly r;
    for (const auto& [m, c] : a.terms_)
        for (const auto& [n, d] : b.terms_) {
            GradedPoly::Monomial s;
            for (int x = 0; x < GradedPoly::NVars; ++x) s[x] = m[x] + n[x];
            r.add(s, c * d);
        }
    return r;
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

std::string GradedPoly::str() const {
    if (terms_.empty()) return "0";
    // spectral variables first, then by increasing degree
    std::vector<std::pair<Monomial, Rational>> order(terms_.begin(), terms_.end());
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        int sx = x.first[H] == 0 && degree(x.first) > 0, sy = y.first[H] == 0 && degree(y.first) > 0;
        if (sx != sy) return sx > sy;
        if (sx) return x.first > y.first;
        return degree(x.first) < degree(y.first);
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : order) {
        Rational a = c.abs();
        bool neg = c.sign() < 0;
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (int x : {B, C, H, U, V, U1, U2})
            for (int e = 0; e < m[x]; ++e) mono += kVarNames[x];
        if (mono.empty()) os << a;
        else if (a == Rational(1)) os << mono;
        else os << a << " " << mono;
    }
    return os.str();
}

GradedPoly shifted(const std::string& var, const Rational& quarter_units) {
    return GradedPoly::spectral(var) +
           GradedPoly(quarter_units / Rational(4)) * GradedPoly::var(GradedPoly::H) * GradedPoly::var(GradedPoly::C);
}

// ---------------------------------------------------------------- trig factors

namespace {

std::string exponent_text(const Rational& r) { return r == Rational(1) ? "" : "^{" + r.str() + "}"; }

// "a", "-a", "2a", "-1/2": multiple of a plus an explicit rational, never both.
std::pair<Rational, Rational> parse_q_exponent(std::string s) {
    if (!s.empty() && s.back() == 'a') {
        s.pop_back();
        if (s.empty() || s == "+") return {Rational(1), Rational(0)};
        if (s == "-") return {Rational(-1), Rational(0)};
        return {Rational::parse(s), Rational(0)};
    }
    return {Rational(0), Rational::parse(s)};
}

// splits "base^{exp}" or "base"
std::pair<std::string, std::string> split_power(const std::string& tok) {
    auto p = tok.find("^{");
    if (p == std::string::npos) return {tok, "1"};
    if (tok.back() != '}') throw WrongKind("bad power token: " + tok);
    return {tok.substr(0, p), tok.substr(p + 2, tok.size() - p - 3)};
}

bool is_trig_var(const std::string& s) { return s == "z" || s == "w" || s == "z1" || s == "z2"; }

const std::string& default_image(const std::string& q_var) {
    static const std::map<std::string, std::string> m{{"z", "u"}, {"w", "v"}, {"z1", "u1"}, {"z2", "u2"}};
    auto it = m.find(q_var);
    if (it == m.end()) throw WrongKind("unknown q-side variable: " + q_var);
    return it->second;
}

std::string image(const std::string& q_var, const std::map<std::string, std::string>& var_map) {
    auto it = var_map.find(q_var);
    return it == var_map.end() ? default_image(q_var) : it->second;
}

}  // namespace

TrigFactor parse_trig(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    TrigFactor f;
    TrigSummand cur;
    bool open = false;
    auto flush = [&] {
        if (open) f.summands.push_back(cur);
        cur = TrigSummand{};
        open = false;
    };
    while (in >> tok) {
        if (tok == "+" || tok == "-") {
            flush();
            cur.coef = tok == "-" ? Rational(-1) : Rational(1);
            continue;
        }
        open = true;
        auto [base, exp] = split_power(tok);
        if (base == "q") {
            auto [qa, qr] = parse_q_exponent(exp);
            cur.q_a += qa;
            cur.q_r += qr;
        } else if (base == "g") {
            cur.gamma += Rational::parse(exp);
        } else if (is_trig_var(base)) {
            Rational e = Rational::parse(exp);
            if (!e.is_integer()) throw WrongKind("non-integral power of " + base);
            cur.monomial[base] += static_cast<int>(e.to_long());
        } else {
            cur.coef *= Rational::parse(tok);
        }
    }
    flush();
    if (f.summands.empty()) throw WrongKind("empty trig factor");
    return f;
}

std::string TrigFactor::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& s : summands) {
        Rational a = s.coef.abs();
        if (first) os << (s.coef.sign() < 0 ? "-" : "");
        else os << (s.coef.sign() < 0 ? " - " : " + ");
        first = false;
        std::vector<std::string> parts;
        if (a != Rational(1)) parts.push_back(a.str());
        if (!s.q_a.is_zero()) parts.push_back("q^{" + (s.q_a == Rational(1) ? std::string() : s.q_a == Rational(-1) ? std::string("-") : s.q_a.str()) + "a}");
        if (!s.q_r.is_zero()) parts.push_back("q" + exponent_text(s.q_r));
        if (!s.gamma.is_zero()) parts.push_back("g" + exponent_text(s.gamma));
        for (const auto& [x, e] : s.monomial)
            if (e != 0) parts.push_back(x + exponent_text(Rational(e)));
        if (parts.empty()) parts.push_back("1");
        for (std::size_t k = 0; k < parts.size(); ++k) os << (k ? " " : "") << parts[k];
    }
    return os.str();
}

GradedPoly expand_trig(const TrigFactor& f, int degree, const std::map<std::string, std::string>& var_map) {
    const GradedPoly h = GradedPoly::var(GradedPoly::H);
    GradedPoly out;
    for (const auto& s : f.summands) {
        // exponent x, every term of positive degree
        GradedPoly x = h * (GradedPoly(s.q_a) * GradedPoly::var(GradedPoly::B) + GradedPoly(s.q_r / Rational(2))) +
                       GradedPoly(s.gamma / Rational(2)) * h * GradedPoly::var(GradedPoly::C);
        for (const auto& [v, e] : s.monomial) x += GradedPoly(Rational(e)) * GradedPoly::spectral(image(v, var_map));
        GradedPoly term(Rational(1)), power(Rational(1));
        Rational fact(1);
        for (int n = 1; n <= degree; ++n) {
            power = (power * x).truncated(degree);
            fact *= Rational(n);
            term += GradedPoly(Rational(1) / fact) * power;
        }
        out += GradedPoly(s.coef) * term;
    }
    return out.truncated(degree);
}

Linearization linearize_factor(const TrigFactor& f, std::optional<Rational> a_ij,
                               const std::map<std::string, std::string>& var_map) {
    Linearization r;
    r.raw = expand_trig(f, 1, var_map);
    if (a_ij) r.raw = r.raw.substitute(GradedPoly::B, *a_ij / Rational(2));
    r.degenerate = r.raw.is_zero();
    Rational cu = r.raw.coefficient(GradedPoly::U);
    r.sign = cu.sign() < 0 ? -1 : 1;
    r.poly = r.sign < 0 ? -r.raw : r.raw;
    return r;
}

std::string Linearization::str() const { return degenerate ? "<degenerate>" : poly.str(); }

bool multiplicative_at_leading_order(const TrigFactor& f, const TrigFactor& g,
                                     const std::map<std::string, std::string>& var_map) {
    GradedPoly prod = (expand_trig(f, 2, var_map) * expand_trig(g, 2, var_map)).truncated(2);
    GradedPoly lin = (expand_trig(f, 1, var_map) * expand_trig(g, 1, var_map)).truncated(2);
    // below degree 2 the two agree trivially; the content is the degree-2 part
    return prod == lin;
}

// ---------------------------------------------------------------- schemas

std::string CurrentLabel::str() const {
    std::ostringstream os;
    const bool q_side = kind == "psi";
    std::string s = sign > 0 ? "+" : "-";
    if (kind == "psi") os << "psi^" << index << "_" << s;
    else if (kind == "H") os << "H^" << s << "_" << index;
    else os << "E^" << s << "_" << index;
    os << "(" << var;
    if (!shift.is_zero()) {
        if (q_side) os << " g^{" << shift << "}";
        else os << (shift.sign() > 0 ? " + " : " - ") << shift.abs() << " hc";
    }
    os << ")";
    return os.str();
}

namespace {

CurrentLabel lab(std::string kind, int sign, std::string index, std::string var, Rational shift = Rational(0)) {
    return CurrentLabel{std::move(kind), sign, std::move(index), std::move(var), shift};
}

std::string qa(int s) { return s > 0 ? "q^{a}" : "q^{-a}"; }
std::string ghalf(int s) { return s > 0 ? "g^{-1/2}" : "g^{1/2}"; }  // gamma^{-s/2}

GradedPoly Bh() { return GradedPoly::var(GradedPoly::B) * GradedPoly::var(GradedPoly::H); }
GradedPoly S(const std::string& x, int quarters = 0) { return shifted(x, Rational(quarters)); }
GradedPoly R(int s) { return GradedPoly(Rational(s)); }

}  // namespace

std::vector<RelationSchema> q_relation_schemas(int q_rel) {
    std::vector<RelationSchema> out;
    auto name = "(" + std::to_string(q_rel) + ")";
    auto push = [&](int s, IndexCondition cond, std::vector<SchemaTerm> terms,
                    std::map<std::string, std::string> vm = {}) {
        out.push_back(RelationSchema{name, s, cond, std::move(vm), std::move(terms)});
    };
    switch (q_rel) {
    case 1:
        for (int s : {1, -1})
            push(s, IndexCondition::None,
                 {{Rational(1), {}, {}, {}, {lab("psi", s, "i", "z"), lab("psi", s, "j", "w")}},
                  {Rational(-1), {}, {}, {}, {lab("psi", s, "j", "w"), lab("psi", s, "i", "z")}}});
        break;
    case 2:
        // the right-hand word is kept exactly as printed: psi^i_-(w) psi^j_+(z)
        push(1, IndexCondition::None,
             {{Rational(1), {"z - q^{a} g^{-1} w", "z - q^{-a} g w"}, {}, {},
               {lab("psi", 1, "i", "z"), lab("psi", -1, "j", "w")}},
              {Rational(-1), {"z - q^{a} g w", "z - q^{-a} g^{-1} w"}, {}, {},
               {lab("psi", -1, "i", "w"), lab("psi", 1, "j", "z")}}});
        break;
    case 3:
        for (int s : {1, -1})
            push(s, IndexCondition::None,
                 {{Rational(1), {"z - " + qa(s) + " " + ghalf(s) + " w"}, {}, {},
                   {lab("psi", 1, "i", "z"), lab("E", s, "j", "w")}},
                  {Rational(-1), {qa(s) + " z - " + ghalf(s) + " w"}, {}, {},
                   {lab("E", s, "j", "w"), lab("psi", 1, "i", "z")}}});
        break;
    case 4:
        // E sits at z and psi_- at w, so z carries v and w carries u
        for (int s : {1, -1})
            push(s, IndexCondition::None,
                 {{Rational(1), {"z - " + qa(s) + " " + ghalf(s) + " w"}, {}, {},
                   {lab("E", s, "j", "z"), lab("psi", -1, "i", "w")}},
                  {Rational(-1), {qa(s) + " z - " + ghalf(s) + " w"}, {}, {},
                   {lab("psi", -1, "i", "w"), lab("E", s, "j", "z")}}},
                 {{"z", "v"}, {"w", "u"}});
        break;
    case 5:
        push(1, IndexCondition::KroneckerDelta,
             {{Rational(1), {}, {}, {}, {lab("E", 1, "i", "z"), lab("E", -1, "j", "w")}},
              {Rational(-1), {}, {}, {}, {lab("E", -1, "j", "w"), lab("E", 1, "i", "z")}},
              {Rational(-1), {}, {"q - q^{-1}", "z w"}, "z^{-1} w g", {lab("psi", 1, "i", "w", Rational(1, 2))}},
              {Rational(1), {}, {"q - q^{-1}", "z w"}, "z^{-1} w g^{-1}", {lab("psi", -1, "i", "w", Rational(-1, 2))}}});
        break;
    case 6:
        for (int s : {1, -1})
            push(s, IndexCondition::None,
                 {{Rational(1), {"z - " + qa(s) + " w"}, {}, {}, {lab("E", s, "i", "z"), lab("E", s, "j", "w")}},
                  {Rational(-1), {qa(s) + " z - w"}, {}, {}, {lab("E", s, "j", "w"), lab("E", s, "i", "z")}}});
        break;
    case 7:
        for (int s : {1, -1})
            push(s, IndexCondition::Commuting,
                 {{Rational(1), {}, {}, {}, {lab("E", s, "i", "z"), lab("E", s, "j", "w")}},
                  {Rational(-1), {}, {}, {}, {lab("E", s, "j", "w"), lab("E", s, "i", "z")}}});
        break;
    case 8:
        for (int s : {1, -1}) {
            std::vector<SchemaTerm> t;
            for (auto [a, b] : {std::pair{"z1", "z2"}, std::pair{"z2", "z1"}}) {
                t.push_back({Rational(1), {}, {}, {}, {lab("E", s, "i", a), lab("E", s, "i", b), lab("E", s, "j", "w")}});
                t.push_back({Rational(-1), {"q + q^{-1}"}, {}, {},
                             {lab("E", s, "i", a), lab("E", s, "j", "w"), lab("E", s, "i", b)}});
                t.push_back({Rational(1), {}, {}, {}, {lab("E", s, "j", "w"), lab("E", s, "i", a), lab("E", s, "i", b)}});
            }
            push(s, IndexCondition::Adjacent, std::move(t));
        }
        break;
    default:
        throw IndexOutOfRange("q relation must be 1..8, got " + std::to_string(q_rel));
    }
    return out;
}

std::vector<YangianSchema> yangian_relation_schemas(int y_rel) {
    std::vector<YangianSchema> out;
    auto name = "(y" + std::to_string(y_rel) + ")";
    auto push = [&](int s, IndexCondition cond, std::vector<YangianTerm> terms) {
        out.push_back(YangianSchema{name, s, cond, std::move(terms)});
    };
    switch (y_rel) {
    case 1:
        for (int s : {1, -1})
            push(s, IndexCondition::None,
                 {{Rational(1), {}, {}, {}, {lab("H", s, "i", "u"), lab("H", s, "j", "v")}},
                  {Rational(-1), {}, {}, {}, {lab("H", s, "j", "v"), lab("H", s, "i", "u")}}});
        break;
    case 2:
        // upper sign; the lower-sign product is the inverse identity
        push(1, IndexCondition::None,
             {{Rational(1), {S("u", -1) - S("v", 1) + Bh(), S("u", 1) - S("v", -1) - Bh()}, {}, {},
               {lab("H", 1, "i", "u"), lab("H", -1, "j", "v")}},
              {Rational(-1), {S("u", -1) - S("v", 1) - Bh(), S("u", 1) - S("v", -1) + Bh()}, {}, {},
               {lab("H", -1, "j", "v"), lab("H", 1, "i", "u")}}});
        break;
    case 3:
        for (int s : {1, -1})
            push(s, IndexCondition::None,
                 {{Rational(1), {S("u", s) - S("v") - R(s) * Bh()}, {}, {}, {lab("H", 1, "i", "u"), lab("E", s, "j", "v")}},
                  {Rational(-1), {S("u", s) - S("v") + R(s) * Bh()}, {}, {}, {lab("E", s, "j", "v"), lab("H", 1, "i", "u")}}});
        break;
    case 4:
        for (int s : {1, -1})
            push(s, IndexCondition::None,
                 {{Rational(1), {S("u", -s) - S("v") - R(s) * Bh()}, {}, {}, {lab("H", -1, "i", "u"), lab("E", s, "j", "v")}},
                  {Rational(-1), {S("u", -s) - S("v") + R(s) * Bh()}, {}, {}, {lab("E", s, "j", "v"), lab("H", -1, "i", "u")}}});
        break;
    case 5:
        for (int s : {1, -1})
            push(s, IndexCondition::None,
                 {{Rational(1), {S("u") - S("v") - R(s) * Bh()}, {}, {}, {lab("E", s, "i", "u"), lab("E", s, "j", "v")}},
                  {Rational(-1), {S("u") - S("v") + R(s) * Bh()}, {}, {}, {lab("E", s, "j", "v"), lab("E", s, "i", "u")}}});
        break;
    case 6: {
        GradedPoly h = GradedPoly::var(GradedPoly::H);
        push(1, IndexCondition::KroneckerDelta,
             {{Rational(1), {}, {}, {}, {lab("E", 1, "i", "u"), lab("E", -1, "j", "v")}},
              {Rational(-1), {}, {}, {}, {lab("E", -1, "j", "v"), lab("E", 1, "i", "u")}},
              {Rational(-1), {}, {h}, S("u", -1) - S("v", 1), {lab("H", 1, "i", "v", Rational(1, 4))}},
              {Rational(1), {}, {h}, S("u", 1) - S("v", -1), {lab("H", -1, "i", "v", Rational(-1, 4))}}});
        break;
    }
    case 7:
        for (int s : {1, -1}) {
            std::vector<YangianTerm> t;
            for (auto [a, b] : {std::pair{"u1", "u2"}, std::pair{"u2", "u1"}}) {
                t.push_back({Rational(1), {}, {}, {}, {lab("E", s, "i", a), lab("E", s, "i", b), lab("E", s, "j", "v")}});
                t.push_back({Rational(-1), {R(2)}, {}, {}, {lab("E", s, "i", a), lab("E", s, "j", "v"), lab("E", s, "i", b)}});
                t.push_back({Rational(1), {}, {}, {}, {lab("E", s, "j", "v"), lab("E", s, "i", a), lab("E", s, "i", b)}});
            }
            push(s, IndexCondition::Adjacent, std::move(t));
        }
        break;
    case 8:
        for (int s : {1, -1})
            push(s, IndexCondition::Commuting,
                 {{Rational(1), {}, {}, {}, {lab("E", s, "i", "u"), lab("E", s, "j", "v")}},
                  {Rational(-1), {}, {}, {}, {lab("E", s, "j", "v"), lab("E", s, "i", "u")}}});
        break;
    default:
        throw IndexOutOfRange("Yangian relation must be 1..8, got " + std::to_string(y_rel));
    }
    return out;
}

int yangian_partner(int q_rel) {
    static const int partner[9] = {0, 1, 2, 3, 4, 6, 5, 8, 7};
    if (q_rel < 1 || q_rel > 8) throw IndexOutOfRange("q relation must be 1..8, got " + std::to_string(q_rel));
    return partner[q_rel];
}

// ---------------------------------------------------------------- matching

namespace {

// Word key without indices: kind, sign, variable, shift, in order.
std::string word_key(const std::vector<CurrentLabel>& w) {
    std::ostringstream os;
    for (const auto& l : w) os << l.kind << l.sign << "@" << l.var << "+" << l.shift << ";";
    return os.str();
}

std::string word_str(const std::vector<CurrentLabel>& w) {
    std::string s;
    for (const auto& l : w) s += (s.empty() ? "" : " ") + l.str();
    return s;
}

CurrentLabel map_label(const CurrentLabel& l, const std::map<std::string, std::string>& vm) {
    CurrentLabel r = l;
    if (l.kind == "psi") r.kind = "H";
    r.var = image(l.var, vm);
    r.shift = l.shift / Rational(2);  // gamma^{g} x -> x + g hc/2
    return r;
}

// Monomial weight in the q variables carried by a term: explicit monomial
// factors plus one 1/x per E(x), from z E(z) -> E(u).
std::map<std::string, int> monomial_weight(const SchemaTerm& t) {
    std::map<std::string, int> w;
    auto absorb = [&](const std::string& text, int sgn) {
        TrigFactor f = parse_trig(text);
        if (f.summands.size() != 1) return;
        const auto& s = f.summands[0];
        if (!s.q_a.is_zero() || !s.q_r.is_zero() || !s.gamma.is_zero()) return;
        for (const auto& [x, e] : s.monomial) w[x] += sgn * e;
    };
    for (const auto& f : t.numerators) absorb(f, 1);
    for (const auto& f : t.denominators) absorb(f, -1);
    for (const auto& l : t.word)
        if (l.kind == "E") w[l.var] -= 1;
    std::erase_if(w, [](const auto& kv) { return kv.second == 0; });
    return w;
}

struct Side {
    std::vector<GradedPoly> polys;  // normalized, vanishing at degree 0
    Rational scalar{1};             // signs of normalization times leading constants
};

GradedPoly normalize(const GradedPoly& p, int* flip) {
    *flip = p.coefficient(GradedPoly::U).sign() < 0 ? -1 : 1;
    return *flip < 0 ? -p : p;
}

bool same_multiset(std::vector<GradedPoly> a, std::vector<GradedPoly> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

bool check_condition(IndexCondition c) {
    if (c != IndexCondition::Commuting && c != IndexCondition::Adjacent) return true;
    // type A translation: a_ij = 0 <=> |i-j| > 1 and a_ij = -1 <=> |i-j| = 1
    for (int N = 2; N <= 8; ++N) {
        AlgebraData d = build_algebra_data(N);
        for (int i = 1; i < N; ++i)
            for (int j = 1; j < N; ++j) {
                int a = d.a(i - 1, j - 1), dist = std::abs(i - j);
                bool q = c == IndexCondition::Commuting ? a == 0 : a == -1;
                bool y = c == IndexCondition::Commuting ? dist > 1 : dist == 1;
                if (q != y) return false;
            }
    }
    return true;
}

std::string condition_str(IndexCondition c, bool q_side) {
    switch (c) {
    case IndexCondition::None: return "none";
    case IndexCondition::KroneckerDelta: return "delta_ij";
    case IndexCondition::Commuting: return q_side ? "a_ij = 0" : "|i-j| > 1";
    case IndexCondition::Adjacent: return q_side ? "a_ij = -1" : "|i-j| = 1";
    }
    return "?";
}

}  // namespace

VariantReport match_schema(const RelationSchema& q, const YangianSchema& y) {
    VariantReport rep;
    rep.sign = q.sign;
    rep.condition_matched = q.condition == y.condition && check_condition(q.condition);
    if (q.condition != IndexCondition::None)
        rep.notes.push_back("condition " + condition_str(q.condition, true) + " <-> " + condition_str(y.condition, false));

    // word bijection
    std::map<std::string, std::size_t> y_by_word;
    for (std::size_t k = 0; k < y.terms.size(); ++k) y_by_word[word_key(y.terms[k].word)] = k;
    std::vector<std::size_t> partner(q.terms.size(), y.terms.size());
    std::vector<bool> used(y.terms.size(), false);
    rep.words_matched = q.terms.size() == y.terms.size() && y_by_word.size() == y.terms.size();
    for (std::size_t k = 0; k < q.terms.size(); ++k) {
        std::vector<CurrentLabel> mapped;
        for (const auto& l : q.terms[k].word) mapped.push_back(map_label(l, q.var_map));
        auto it = y_by_word.find(word_key(mapped));
        const bool hit = it != y_by_word.end() && !used[it->second];
        rep.words.push_back(word_str(q.terms[k].word) + "  ->  " + word_str(mapped) + "  ~  " +
                            (hit ? word_str(y.terms[it->second].word) : std::string("<none>")));
        if (!hit) {
            rep.words_matched = false;
            continue;
        }
        used[it->second] = true;
        partner[k] = it->second;
        const auto& yw = y.terms[it->second].word;
        for (std::size_t m = 0; m < mapped.size(); ++m)
            if (mapped[m].index != yw[m].index)
                rep.notes.push_back("index label differs: " + q.terms[k].word[m].str() + " vs " + yw[m].str() +
                                    " (matched by variable)");
    }

    // monomial weights from z E(z) -> E(u) must be common to all terms
    std::optional<std::map<std::string, int>> weight;
    bool weights_common = true;
    for (const auto& t : q.terms) {
        auto w = monomial_weight(t);
        if (!weight) weight = w;
        else if (*weight != w) weights_common = false;
    }
    if (!weights_common) rep.notes.push_back("monomial weights differ between terms");

    // factors
    rep.factors_matched = rep.words_matched && weights_common;
    std::vector<TrigFactor> vanishing;
    for (std::size_t k = 0; k < q.terms.size() && rep.words_matched; ++k) {
        const SchemaTerm& qt = q.terms[k];
        const YangianTerm& yt = y.terms[partner[k]];
        Side qs[2], ys[2];
        for (int part = 0; part < 2; ++part) {
            const auto& texts = part == 0 ? qt.numerators : qt.denominators;
            const auto& targets = part == 0 ? yt.numerators : yt.denominators;
            std::vector<GradedPoly> target_norm;
            for (const auto& p : targets) {
                if (!p.constant().is_zero()) {
                    ys[part].scalar *= p.constant();
                    continue;
                }
                int flip;
                target_norm.push_back(normalize(p, &flip));
                ys[part].scalar *= Rational(flip);
            }
            for (const auto& text : texts) {
                TrigFactor f = parse_trig(text);
                Linearization lin = linearize_factor(f, std::nullopt, q.var_map);
                FactorPair fp{text, lin.str(), "", false};
                if (lin.degenerate) {
                    rep.factors_matched = false;
                    fp.target = "<degenerate>";
                } else if (!lin.raw.constant().is_zero()) {
                    // scalar at leading order
                    qs[part].scalar *= lin.raw.constant();
                    fp.linearized = "leading " + lin.raw.constant().str();
                    fp.target = "scalar";
                    fp.matched = true;
                } else {
                    vanishing.push_back(f);
                    qs[part].polys.push_back(lin.poly);
                    qs[part].scalar *= Rational(lin.sign);
                    auto hit = std::find(target_norm.begin(), target_norm.end(), lin.poly);
                    fp.matched = hit != target_norm.end();
                    fp.target = fp.matched ? hit->str() : std::string("<none>");
                }
                rep.factors.push_back(fp);
            }
            if (!same_multiset(qs[part].polys, target_norm)) rep.factors_matched = false;
            for (const auto& p : targets)
                if (!p.constant().is_zero())
                    rep.factors.push_back({"(implicit)", "", "scalar " + p.constant().str(), true});
        }
        // delta location
        if (qt.delta.has_value() != yt.delta_locus.has_value()) {
            rep.factors_matched = false;
        } else if (qt.delta) {
            GradedPoly x = expand_trig(parse_trig(*qt.delta), 1, q.var_map) - GradedPoly(Rational(1));
            int f1, f2;
            GradedPoly loc = normalize(x, &f1), want = normalize(*yt.delta_locus, &f2);
            bool ok = loc == want;
            rep.factors.push_back({"delta(" + *qt.delta + ")", "delta(" + loc.str() + ")", "delta(" + want.str() + ")", ok});
            if (!ok) rep.factors_matched = false;
        }
        Rational qv = qt.sign * qs[0].scalar / qs[1].scalar, yv = yt.sign * ys[0].scalar / ys[1].scalar;
        Rational ratio = qv / yv;
        if (!rep.overall) rep.overall = ratio;
        else if (*rep.overall != ratio) rep.factors_matched = false;
    }
    if (rep.overall && rep.overall->abs() != Rational(1)) rep.factors_matched = false;
    bool has_delta = false;
    for (const auto& t : q.terms) has_delta = has_delta || t.delta.has_value();
    if (has_delta)
        rep.notes.push_back("delta compared by pole location and leading prefactor; the Jacobian of z = e^u is not adjudicated");

    rep.multiplicative = true;
    for (std::size_t a = 0; a < vanishing.size(); ++a)
        for (std::size_t b = a; b < vanishing.size(); ++b)
            rep.multiplicative = rep.multiplicative && multiplicative_at_leading_order(vanishing[a], vanishing[b], q.var_map);
    return rep;
}

bool VariantReport::pass() const { return words_matched && factors_matched && multiplicative && condition_matched; }

bool CorrespondenceReport::pass() const {
    if (variants.empty()) return false;
    for (const auto& v : variants)
        if (!v.pass()) return false;
    return true;
}

CorrespondenceReport correspond_relation(int q_rel) {
    CorrespondenceReport rep;
    rep.q_rel = q_rel;
    rep.y_rel = yangian_partner(q_rel);
    auto qs = q_relation_schemas(q_rel);
    auto ys = yangian_relation_schemas(rep.y_rel);
    for (const auto& q : qs) {
        auto it = std::find_if(ys.begin(), ys.end(), [&](const YangianSchema& y) { return y.sign == q.sign; });
        if (it == ys.end()) {
            VariantReport v;
            v.sign = q.sign;
            v.notes.push_back("no Yangian partner for this sign");
            rep.variants.push_back(v);
            continue;
        }
        rep.variants.push_back(match_schema(q, *it));
    }
    return rep;
}

std::string CorrespondenceReport::str() const {
    std::ostringstream os;
    os << "(" << q_rel << ") -> (y" << y_rel << "): " << (pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& v : variants) {
        os << "  sign " << (v.sign > 0 ? "+" : "-") << ": " << (v.pass() ? "PASS" : "FAIL");
        if (v.overall) os << "  overall " << *v.overall;
        os << "\n";
        for (const auto& w : v.words) os << "    word    " << w << "\n";
        for (const auto& f : v.factors)
            os << "    factor  " << f.trig << "  =>  " << f.linearized << "  ~  " << f.target
               << (f.matched ? "  ok" : "  MISMATCH") << "\n";
        for (const auto& n : v.notes) os << "    note    " << n << "\n";
    }
    return os.str();
}

}  // namespace yangian
