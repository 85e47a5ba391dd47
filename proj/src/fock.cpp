#include "yangian/fock.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>

#include "yangian/cartan.hpp"
#include "yangian/errors.hpp"
#include "yangian/exchange.hpp"

namespace yangian {

void OracleConfig::validate() const {
    if (N < 2) throw InvalidRank("oracle: N must be >= 2");
    if (L < 1) throw Error("oracle: mode cutoff L must be >= 1");
    if (hbar.is_zero()) throw Error("oracle: hbar must be nonzero");
    if (k == Rational(-N)) throw Unsupported("oracle: critical level k = -g excluded");
    if (window.lo > window.hi) throw Error("oracle: empty exponent window");
    if (bra_level < 0) throw Error("oracle: bra_level must be >= 0");
}

std::string OracleConfig::str() const {
    std::ostringstream os;
    os << "N=" << N << " k=" << k << " hbar=" << hbar << " L=" << L << " window=" << window.lo << ":" << window.hi
       << " bra_level=" << bra_level << " variant=" << variant_name(currents.variant)
       << " en=" << currents.reading.str();
    for (const auto& [X, l] : momenta) os << " p[" << X.str() << "]=" << l;
    return os.str();
}

FockState FockState::vacuum(const std::map<BosonSymbol, Rational>& momenta) {
    FockState s;
    s.momenta = momenta;
    s.normalize();
    return s;
}

FockState& FockState::excite(const BosonSymbol& X, int n, int times) {
    if (n < 1) throw Error("excite: mode index must be >= 1");
    occupation[{X, n}] += times;
    normalize();
    return *this;
}

int FockState::level() const {
    int l = 0;
    for (const auto& [m, c] : occupation) l += m.second * c;
    return l;
}

void FockState::normalize() {
    std::erase_if(momenta, [](const auto& p) { return p.second.is_zero(); });
    std::erase_if(occupation, [](const auto& p) { return p.second == 0; });
}

std::string FockState::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : occupation) {
        if (!first) os << " ";
        os << m.first.str() << "_{-" << m.second << "}";
        if (c > 1) os << "^" << c;
        first = false;
    }
    os << (first ? "" : " ") << "|";
    first = true;
    for (const auto& [X, l] : momenta) {
        os << (first ? "" : ",") << X.str() << "=" << l;
        first = false;
    }
    os << ">";
    return os.str();
}

namespace {

// ---------------------------------------------------------------- series kit

// sum_i c[i] x^{lo+i}
struct S1 {
    int lo = 0;
    std::vector<Rational> c;
    bool empty() const { return c.empty(); }
    int hi() const { return lo + static_cast<int>(c.size()) - 1; }
};

S1 s1_one() { return {0, {Rational(1)}}; }

S1 s1_mul(const S1& a, const S1& b, int cut) {
    S1 r;
    if (a.empty() || b.empty()) return r;
    int lo = std::max(a.lo + b.lo, cut);
    int hi = a.hi() + b.hi();
    if (hi < lo) return r;
    r.lo = lo;
    r.c.assign(static_cast<std::size_t>(hi - lo + 1), Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            int e = a.lo + static_cast<int>(i) + b.lo + static_cast<int>(j);
            if (e < lo || b.c[j].is_zero()) continue;
            r.c[static_cast<std::size_t>(e - lo)] += a.c[i] * b.c[j];
        }
    }
    return r;
}

void s1_add(S1& acc, const S1& x, const Rational& scale = Rational(1)) {
    if (x.empty()) return;
    if (acc.empty()) {
        acc.lo = x.lo;
        acc.c.assign(x.c.size(), Rational(0));
    }
    int lo = std::min(acc.lo, x.lo), hi = std::max(acc.hi(), x.hi());
    if (lo != acc.lo || hi != acc.hi()) {
        std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1), Rational(0));
        for (std::size_t i = 0; i < acc.c.size(); ++i) c[static_cast<std::size_t>(acc.lo - lo) + i] = acc.c[i];
        acc.c = std::move(c);
        acc.lo = lo;
    }
    for (std::size_t i = 0; i < x.c.size(); ++i)
        if (!x.c[i].is_zero()) acc.c[static_cast<std::size_t>(x.lo - lo) + i] += scale * x.c[i];
}

// (x + s)^e / x^top with top = e, exponents top - j down to cut, as absolute
// exponents shifted by `top_int` (the caller's integer offset).
S1 s1_power(const Rational& e, const Rational& s, int top_int, int cut) {
    S1 r;
    if (top_int < cut) return r;
    auto co = shifted_power_coeffs(e, s, top_int - cut);
    r.lo = cut;
    r.c.assign(co.size(), Rational(0));
    for (std::size_t j = 0; j < co.size(); ++j) r.c[co.size() - 1 - j] = co[j];
    return r;
}

// Sparse coefficients in up to three variables (relative exponents), kept
// sorted by exponent. lo/ext bound the support.
using Exp3 = std::array<int, 3>;

// Integer image of a Dense: numerators over one common denominator. Built
// only when everything fits in 62 bits.
struct IntDense {
    std::vector<std::pair<Exp3, std::int64_t>> nz;
    mpz_class den{1};
    int bits = 0;  // of the largest |numerator|
};

struct Dense {
    Exp3 lo{0, 0, 0};
    Exp3 ext{0, 0, 0};
    std::vector<std::pair<Exp3, Rational>> nz;
    mutable std::shared_ptr<const IntDense> ints;  // cached by dense_mul; null if unusable
    mutable bool ints_tried = false;

    static Dense one() {
        Dense d;
        d.ext = {1, 1, 1};
        d.nz.emplace_back(Exp3{0, 0, 0}, Rational(1));
        return d;
    }
    bool empty() const { return nz.empty(); }
    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [e, c] : nz) f(e, c);
    }
    Exp3 max_nonzero() const {
        Exp3 m = lo;
        bool any = false;
        for (const auto& [e, c] : nz) {
            for (std::size_t t = 0; t < 3; ++t) m[t] = any ? std::max(m[t], e[t]) : e[t];
            any = true;
        }
        return m;
    }
    // Sorts, merges equal exponents, drops zeros and recomputes the bounds.
    void normalize() {
        std::sort(nz.begin(), nz.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        std::size_t w = 0;
        for (std::size_t r = 0; r < nz.size(); ++r) {
            if (w > 0 && nz[w - 1].first == nz[r].first) {
                nz[w - 1].second += nz[r].second;
                continue;
            }
            if (w > 0 && nz[w - 1].second.is_zero()) --w;
            if (w != r) nz[w] = std::move(nz[r]);
            ++w;
        }
        if (w > 0 && nz[w - 1].second.is_zero()) --w;
        nz.resize(w);
        bound();
    }
    void bound() {
        if (nz.empty()) {
            lo = ext = {0, 0, 0};
            return;
        }
        Exp3 hi = nz.front().first;
        lo = hi;
        for (const auto& [e, c] : nz)
            for (std::size_t t = 0; t < 3; ++t) {
                lo[t] = std::min(lo[t], e[t]);
                hi[t] = std::max(hi[t], e[t]);
            }
        for (std::size_t t = 0; t < 3; ++t) ext[t] = hi[t] - lo[t] + 1;
    }
};

std::size_t box_size(const Exp3& ext) {
    return static_cast<std::size_t>(ext[0]) * static_cast<std::size_t>(ext[1]) * static_cast<std::size_t>(ext[2]);
}

Dense outer(const Dense& d, int t, const S1& f) {
    Dense r;
    if (d.empty() || f.empty()) return r;
    auto tt = static_cast<std::size_t>(t);
    for (const auto& [e, x] : d.nz) {
        Exp3 p = e;
        for (std::size_t j = 0; j < f.c.size(); ++j) {
            if (f.c[j].is_zero()) continue;
            p[tt] = f.lo + static_cast<int>(j);
            r.nz.emplace_back(p, x * f.c[j]);
        }
    }
    r.normalize();
    return r;
}

void add_into(Dense& acc, const Dense& x) {
    if (x.empty()) return;
    if (acc.empty()) {
        acc = x;
        return;
    }
    acc.nz.insert(acc.nz.end(), x.nz.begin(), x.nz.end());
    acc.normalize();
    acc.ints.reset();
    acc.ints_tried = false;
}

int bit_length(std::uint64_t x) { return x == 0 ? 0 : 64 - __builtin_clzll(x); }

bool to_int_uncached(const Dense& d, IntDense& out) {
    mpz_class l(1);
    for (const auto& [e, c] : d.nz) {
        mpz_class dn = c.den();
        if (dn != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), dn.get_mpz_t());
    }
    if (mpz_sizeinbase(l.get_mpz_t(), 2) > 62) return false;
    std::uint64_t mx = 0;
    for (const auto& [e, c] : d.nz) {
        mpz_class n = c.num() * (l / c.den());
        if (mpz_sizeinbase(n.get_mpz_t(), 2) > 62) return false;
        std::int64_t v = n.get_si();
        mx = std::max<std::uint64_t>(mx, static_cast<std::uint64_t>(v < 0 ? -v : v));
        out.nz.emplace_back(e, v);
    }
    out.den = l;
    out.bits = bit_length(mx);
    return true;
}

const IntDense* to_int(const Dense& d) {
    if (!d.ints_tried) {
        d.ints_tried = true;
        auto x = std::make_shared<IntDense>();
        if (to_int_uncached(d, *x)) d.ints = std::move(x);
    }
    return d.ints.get();
}

Rational from_int128(__int128 x, const mpz_class& den) {
    const bool neg = x < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
    std::uint64_t limbs[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
    mpz_class n;
    mpz_import(n.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
    if (neg) n = -n;
    return Rational(mpq_class(n, den));
}

Dense dense_mul(const Dense& a, const Dense& b, const Exp3& cut, const Exp3& top) {
    Dense r;
    if (a.empty() || b.empty()) return r;
    Exp3 lo{}, ext{};
    for (std::size_t t = 0; t < 3; ++t) {
        lo[t] = std::max(a.lo[t] + b.lo[t], cut[t]);
        int hi = std::min(a.lo[t] + a.ext[t] - 1 + b.lo[t] + b.ext[t] - 1, top[t]);
        if (hi < lo[t]) return r;
        ext[t] = hi - lo[t] + 1;
    }
    const IntDense* pa = to_int(a);
    const IntDense* pb = pa ? to_int(b) : nullptr;
    if (pa && pb && pa->bits + pb->bits + bit_length(std::min(pa->nz.size(), pb->nz.size())) <= 125) {
        // exact in 128-bit integers over a dense box; one canonicalization
        // per nonzero output
        const std::size_t n = box_size(ext);
        std::vector<__int128> acc(n, 0);
        auto at = [&](const Exp3& e) {
            return (static_cast<std::size_t>(e[0] - lo[0]) * static_cast<std::size_t>(ext[1]) +
                    static_cast<std::size_t>(e[1] - lo[1])) *
                       static_cast<std::size_t>(ext[2]) +
                   static_cast<std::size_t>(e[2] - lo[2]);
        };
        for (const auto& [ea, ca] : pa->nz)
            for (const auto& [eb, cb] : pb->nz) {
                Exp3 e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
                if (e[0] < lo[0] || e[1] < lo[1] || e[2] < lo[2]) continue;
                if (e[0] >= lo[0] + ext[0] || e[1] >= lo[1] + ext[1] || e[2] >= lo[2] + ext[2]) continue;
                acc[at(e)] += static_cast<__int128>(ca) * cb;
            }
        const mpz_class den = pa->den * pb->den;
        Exp3 e{};
        std::size_t p = 0;
        for (e[0] = lo[0]; e[0] < lo[0] + ext[0]; ++e[0])
            for (e[1] = lo[1]; e[1] < lo[1] + ext[1]; ++e[1])
                for (e[2] = lo[2]; e[2] < lo[2] + ext[2]; ++e[2], ++p)
                    if (acc[p] != 0) r.nz.emplace_back(e, from_int128(acc[p], den));
        r.bound();
        return r;
    }
    for (const auto& [ea, ca] : a.nz)
        for (const auto& [eb, cb] : b.nz) {
            Exp3 e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            if (e[0] < lo[0] || e[1] < lo[1] || e[2] < lo[2]) continue;
            if (e[0] >= lo[0] + ext[0] || e[1] >= lo[1] + ext[1] || e[2] >= lo[2] + ext[2]) continue;
            r.nz.emplace_back(e, ca * cb);
        }
    r.normalize();
    return r;
}

// ---------------------------------------------------------------- layout

using Mono = std::vector<int>;

struct BlockInfo {
    std::vector<int> bosons;  // global indices
    RationalMatrix G;         // Gram among them
    int nvar = 0;             // local boson * L + (n-1)
    std::vector<int> weight;
    std::vector<Mono> monos;  // all monomials of level <= L
    std::map<Mono, int> index;
    std::vector<int> level;
};

int mono_level(const BlockInfo& b, const Mono& m) {
    int l = 0;
    for (int v = 0; v < b.nvar; ++v) l += b.weight[static_cast<std::size_t>(v)] * m[static_cast<std::size_t>(v)];
    return l;
}

struct Layout {
    int L = 0;
    std::vector<BosonSymbol> bosons;
    std::map<BosonSymbol, int> index;
    std::vector<int> block_of, local_of;
    std::vector<BlockInfo> blocks;
    RationalMatrix G;
};

Layout make_layout(const OracleConfig& cfg) {
    Layout lay;
    lay.L = cfg.L;
    AlgebraData d = build_algebra_data(cfg.N);
    lay.bosons = all_bosons(cfg.N);
    const int nb = static_cast<int>(lay.bosons.size());
    lay.G = RationalMatrix::Constant(nb, nb, Rational(0));
    for (int x = 0; x < nb; ++x) {
        lay.index[lay.bosons[static_cast<std::size_t>(x)]] = x;
        for (int y = 0; y < nb; ++y)
            lay.G(x, y) = boson_metric(lay.bosons[static_cast<std::size_t>(x)], lay.bosons[static_cast<std::size_t>(y)], d)
                              .eval(cfg.k);
    }
    lay.block_of.assign(static_cast<std::size_t>(nb), -1);
    lay.local_of.assign(static_cast<std::size_t>(nb), -1);
    // a-bosons share one block; every b and c boson is its own block
    BlockInfo ablock;
    for (int x = 0; x < nb; ++x)
        if (lay.bosons[static_cast<std::size_t>(x)].kind == BosonKind::A) ablock.bosons.push_back(x);
    lay.blocks.push_back(ablock);
    for (int x = 0; x < nb; ++x)
        if (lay.bosons[static_cast<std::size_t>(x)].kind != BosonKind::A) lay.blocks.push_back(BlockInfo{{x}, {}, 0, {}, {}, {}, {}});
    for (std::size_t b = 0; b < lay.blocks.size(); ++b) {
        auto& B = lay.blocks[b];
        const int nl = static_cast<int>(B.bosons.size());
        B.G = RationalMatrix::Constant(nl, nl, Rational(0));
        for (int x = 0; x < nl; ++x) {
            lay.block_of[static_cast<std::size_t>(B.bosons[static_cast<std::size_t>(x)])] = static_cast<int>(b);
            lay.local_of[static_cast<std::size_t>(B.bosons[static_cast<std::size_t>(x)])] = x;
            for (int y = 0; y < nl; ++y) B.G(x, y) = lay.G(B.bosons[static_cast<std::size_t>(x)], B.bosons[static_cast<std::size_t>(y)]);
        }
        B.nvar = nl * cfg.L;
        for (int v = 0; v < B.nvar; ++v) B.weight.push_back(v % cfg.L + 1);
        Mono m(static_cast<std::size_t>(B.nvar), 0);
        std::function<void(int, int)> rec = [&](int v, int left) {
            if (v == B.nvar) {
                B.index[m] = static_cast<int>(B.monos.size());
                B.monos.push_back(m);
                B.level.push_back(cfg.L - left);
                return;
            }
            const int w = B.weight[static_cast<std::size_t>(v)];
            for (int e = 0; e * w <= left; ++e) {
                m[static_cast<std::size_t>(v)] = e;
                rec(v + 1, left - e * w);
            }
            m[static_cast<std::size_t>(v)] = 0;
        };
        rec(0, cfg.L);
    }
    return lay;
}

// ---------------------------------------------------------------- numeric terms

struct NumAtom {
    int boson = 0;
    Rational c;
    Rational s;
};

struct NumTerm {
    Rational pref;
    std::vector<NumAtom> plus, minus;
};

std::vector<NumTerm> numeric_terms(const CurrentExpr& e, const ShiftScalar& arg, const Layout& lay,
                                   const OracleConfig& cfg) {
    std::vector<NumTerm> out;
    for (const auto& t : e.terms) {
        NumTerm n;
        n.pref = t.prefactor.eval(cfg.k, cfg.hbar);
        if (n.pref.is_zero()) continue;
        for (const auto& [atom, coef] : t.combo.terms()) {
            auto it = lay.index.find(atom.sym);
            if (it == lay.index.end()) throw IndexOutOfRange("oracle: boson " + atom.sym.str() + " not in sl_N layout");
            Rational c = coef.eval(cfg.k);
            if (c.is_zero()) continue;
            if (atom.has_minus()) n.minus.push_back({it->second, c, (atom.A + arg).eval(cfg.k) * cfg.hbar});
            if (atom.has_plus()) n.plus.push_back({it->second, c, (atom.B + arg).eval(cfg.k) * cfg.hbar});
        }
        out.push_back(std::move(n));
    }
    return out;
}

// Atoms of one term restricted to one block, per local boson.
struct BlockAtoms {
    std::vector<std::vector<std::pair<Rational, Rational>>> plus, minus;
    bool touched = false;
};

BlockAtoms restrict_atoms(const NumTerm& t, int b, const Layout& lay) {
    BlockAtoms r;
    const auto nl = lay.blocks[static_cast<std::size_t>(b)].bosons.size();
    r.plus.resize(nl);
    r.minus.resize(nl);
    for (const auto& a : t.plus)
        if (lay.block_of[static_cast<std::size_t>(a.boson)] == b) {
            r.plus[static_cast<std::size_t>(lay.local_of[static_cast<std::size_t>(a.boson)])].push_back({a.c, a.s});
            r.touched = true;
        }
    for (const auto& a : t.minus)
        if (lay.block_of[static_cast<std::size_t>(a.boson)] == b) {
            r.minus[static_cast<std::size_t>(lay.local_of[static_cast<std::size_t>(a.boson)])].push_back({a.c, a.s});
            r.touched = true;
        }
    return r;
}

std::string atoms_key(const BlockAtoms& a) {
    std::ostringstream os;
    for (std::size_t x = 0; x < a.plus.size(); ++x) {
        os << "P" << x << ":";
        for (const auto& [c, s] : a.plus[x]) os << c << "@" << s << ";";
        os << "M" << x << ":";
        for (const auto& [c, s] : a.minus[x]) os << c << "@" << s << ";";
    }
    return os.str();
}

using BlockOut = std::map<Mono, Dense>;

// One vertex term acting on the block state `in`, recorded in variable slot t.
BlockOut block_step(const BlockInfo& B, const BlockOut& in, int t, const BlockAtoms& A,
                    const std::vector<Rational>& mom, int cut, int cap, int L) {
    const int nl = static_cast<int>(B.bosons.size());
    const int ic = cut - cap;  // factors later multiplied by creation terms of degree <= cap
    // translation from the annihilation half
    std::vector<std::vector<S1>> hp(static_cast<std::size_t>(B.nvar));
    for (int v = 0; v < B.nvar; ++v) {
        const int Y = v / L, n = v % L + 1;
        S1 h;
        for (int X = 0; X < nl; ++X) {
            const Rational& g = B.G(X, Y);
            if (g.is_zero()) continue;
            for (const auto& [c, s] : A.plus[static_cast<std::size_t>(X)])
                s1_add(h, s1_power(Rational(-n), s, -n, ic), -(g * c));
        }
        auto& pw = hp[static_cast<std::size_t>(v)];
        pw.push_back(s1_one());
        for (int m = 1; m * n <= L; ++m) pw.push_back(s1_mul(pw.back(), h, ic));
    }
    // zero-mode factor
    S1 pi = s1_one();
    for (int X = 0; X < nl; ++X)
        for (const auto& [c, s] : A.plus[static_cast<std::size_t>(X)]) {
            Rational e = c * mom[static_cast<std::size_t>(X)];
            if (e.is_zero()) continue;
            pi = s1_mul(pi, s1_power(e, s, 0, ic), ic);
        }
    // creation half
    std::vector<S1> f(static_cast<std::size_t>(B.nvar));
    for (int v = 0; v < B.nvar; ++v) {
        const int Y = v / L, n = v % L + 1;
        S1& fv = f[static_cast<std::size_t>(v)];
        for (const auto& [c, s] : A.minus[static_cast<std::size_t>(Y)]) {
            S1 term;
            term.lo = 0;
            auto co = shifted_power_coeffs(Rational(n), s, n);  // (x+s)^n = sum_j C(n,j) s^j x^{n-j}
            term.c.assign(static_cast<std::size_t>(n) + 1, Rational(0));
            for (int j = 0; j <= n; ++j) term.c[static_cast<std::size_t>(n - j)] = co[static_cast<std::size_t>(j)];
            s1_add(fv, term, c / Rational(n));
        }
    }
    std::vector<S1> E(B.monos.size());
    std::vector<bool> have(B.monos.size(), false);
    for (std::size_t g = 0; g < B.monos.size(); ++g) {
        if (B.level[g] > cap) continue;
        const Mono& m = B.monos[g];
        int v = 0;
        while (v < B.nvar && m[static_cast<std::size_t>(v)] == 0) ++v;
        if (v == B.nvar) {
            E[g] = s1_one();
        } else {
            Mono prev = m;
            prev[static_cast<std::size_t>(v)] -= 1;
            std::size_t pg = static_cast<std::size_t>(B.index.at(prev));
            E[g] = s1_mul(E[pg], f[static_cast<std::size_t>(v)], -1000000);
            for (auto& x : E[g].c) x /= Rational(m[static_cast<std::size_t>(v)]);
        }
        have[g] = true;
    }

    BlockOut out;
    for (const auto& [alpha, D] : in) {
        std::map<Mono, S1> F;
        Mono beta(static_cast<std::size_t>(B.nvar), 0);
        std::function<void(int, S1)> rec = [&](int v, S1 T) {
            if (T.empty()) return;
            if (v == B.nvar) {
                const int lb = mono_level(B, beta);
                for (std::size_t g = 0; g < B.monos.size(); ++g) {
                    if (!have[g] || B.level[g] + lb > cap || E[g].empty()) continue;
                    Mono o = beta;
                    for (int w = 0; w < B.nvar; ++w) o[static_cast<std::size_t>(w)] += B.monos[g][static_cast<std::size_t>(w)];
                    s1_add(F[o], s1_mul(T, E[g], ic));
                }
                return;
            }
            const int a = alpha[static_cast<std::size_t>(v)];
            for (int b = 0; b <= a; ++b) {
                const auto& pw = hp[static_cast<std::size_t>(v)];
                if (static_cast<std::size_t>(a - b) >= pw.size()) continue;
                S1 h = pw[static_cast<std::size_t>(a - b)];
                if (h.empty()) continue;
                Rational bin = binomial(Rational(a), b);
                for (auto& x : h.c) x *= bin;
                beta[static_cast<std::size_t>(v)] = b;
                rec(v + 1, s1_mul(T, h, ic));
            }
            beta[static_cast<std::size_t>(v)] = 0;
        };
        rec(0, s1_one());
        for (auto& [o, Fo] : F) {
            S1 full = s1_mul(Fo, pi, cut);
            add_into(out[o], outer(D, t, full));
        }
    }
    std::erase_if(out, [](const auto& p) { return p.second.empty(); });
    return out;
}

struct Thresholds {
    std::vector<Rational> box;     // per position: e_t >= box_t
    std::vector<Rational> prefix;  // per r = 1..M-1: sum_{t<r} e_t >= prefix_r + level - L
};

// Rules are kept per output momentum sector: a sector no term choice reaches
// gets no contribution at all, truncated or not.
struct WordResult {
    StateSeries out;
    std::vector<std::string> vars;
    std::vector<int> var_of_pos;
    std::map<std::map<BosonSymbol, Rational>, Thresholds> sectors;
    int L = 0;

    void record(const std::map<BosonSymbol, Rational>& sector, const std::vector<Rational>& box,
                const std::vector<Rational>& prefix) {
        auto [it, fresh] = sectors.try_emplace(sector, Thresholds{box, prefix});
        if (fresh) return;
        for (std::size_t t = 0; t < box.size(); ++t) it->second.box[t] = std::max(it->second.box[t], box[t]);
        for (std::size_t q = 0; q < prefix.size(); ++q)
            it->second.prefix[q] = std::max(it->second.prefix[q], prefix[q]);
    }

    std::vector<ExactRule> rules_for(const FockState& s) const {
        std::vector<ExactRule> r;
        auto it = sectors.find(s.momenta);
        if (it == sectors.end()) return r;
        const auto& th = it->second;
        const std::size_t nv = vars.size();
        for (std::size_t t = 0; t < th.box.size(); ++t) {
            std::vector<int> w(nv, 0);
            w[static_cast<std::size_t>(var_of_pos[t])] = 1;
            r.push_back({w, th.box[t]});
        }
        for (std::size_t q = 0; q < th.prefix.size(); ++q) {
            std::vector<int> w(nv, 0);
            for (std::size_t t = 0; t <= q; ++t) w[static_cast<std::size_t>(var_of_pos[t])] = 1;
            r.push_back({w, th.prefix[q] + Rational(s.level() - L)});
        }
        return r;
    }
    GenSeries series_for(const FockState& s) const {
        auto it = out.find(s);
        GenSeries g = it == out.end() ? GenSeries(vars) : it->second;
        g.add_rules(rules_for(s));
        return g;
    }
};

constexpr int kMargin = 2;

class Engine {
public:
    explicit Engine(const OracleConfig& cfg) : cfg_(cfg), lay_(make_layout(cfg)), d_(build_algebra_data(cfg.N)) {}

    const Layout& layout() const { return lay_; }
    const AlgebraData& algebra() const { return d_; }

    // max_total < 0: no absolute level filter. cut_above drops exponents past
    // the window top; only valid when nothing lowers exponents afterwards.
    WordResult run(const Word& w, const FockState& ket, const std::vector<std::string>& vars, int excess,
                   int max_total, bool cut_above = false);
    std::vector<std::vector<Rational>> final_momenta(const Word& w, const FockState& ket);

private:
    const BlockOut& block(int b, const std::vector<const BlockAtoms*>& atoms,
                          const std::vector<std::vector<Rational>>& mom, const Mono& ket,
                          const std::vector<int>& cut, const std::vector<int>& cap);

    OracleConfig cfg_;
    Layout lay_;
    AlgebraData d_;
    std::unordered_map<std::string, std::unique_ptr<BlockOut>> memo_;
};

const BlockOut& Engine::block(int b, const std::vector<const BlockAtoms*>& atoms,
                              const std::vector<std::vector<Rational>>& mom, const Mono& ket,
                              const std::vector<int>& cut, const std::vector<int>& cap) {
    const auto& B = lay_.blocks[static_cast<std::size_t>(b)];
    std::ostringstream key;
    key << b << "|";
    for (int v : ket) key << v << ",";
    for (std::size_t t = 0; t < atoms.size(); ++t) {
        key << "|";
        if (!atoms[t]) continue;
        key << atoms_key(*atoms[t]) << "m";
        for (int x = 0; x < static_cast<int>(B.bosons.size()); ++x) key << mom[t][static_cast<std::size_t>(x)] << ",";
        key << "c" << cut[t] << "k" << cap[t];
    }
    auto k = key.str();
    auto it = memo_.find(k);
    if (it != memo_.end()) return *it->second;

    BlockOut state;
    state[ket] = Dense::one();
    for (int t = static_cast<int>(atoms.size()) - 1; t >= 0; --t) {
        if (!atoms[static_cast<std::size_t>(t)]) continue;
        state = block_step(B, state, t, *atoms[static_cast<std::size_t>(t)], mom[static_cast<std::size_t>(t)],
                           cut[static_cast<std::size_t>(t)], cap[static_cast<std::size_t>(t)], cfg_.L);
    }
    auto [ins, ok] = memo_.emplace(k, std::make_unique<BlockOut>(std::move(state)));
    return *ins->second;
}

struct KetData {
    std::vector<Mono> mono;  // per block
    std::vector<int> level;
    std::vector<Rational> mom;  // global
};

KetData decompose(const FockState& ket, const Layout& lay) {
    KetData k;
    for (const auto& B : lay.blocks) k.mono.emplace_back(static_cast<std::size_t>(B.nvar), 0);
    k.level.assign(lay.blocks.size(), 0);
    k.mom.assign(lay.bosons.size(), Rational(0));
    for (const auto& [X, l] : ket.momenta) {
        auto it = lay.index.find(X);
        if (it == lay.index.end()) throw IndexOutOfRange("ket momentum for unknown boson " + X.str());
        k.mom[static_cast<std::size_t>(it->second)] = l;
    }
    for (const auto& [m, c] : ket.occupation) {
        auto it = lay.index.find(m.first);
        if (it == lay.index.end()) throw IndexOutOfRange("ket excitation of unknown boson " + m.first.str());
        if (m.second > lay.L)
            throw TruncationExceeded("ket mode " + m.first.str() + "_{-" + std::to_string(m.second) +
                                     "} beyond cutoff L=" + std::to_string(lay.L));
        const auto b = static_cast<std::size_t>(lay.block_of[static_cast<std::size_t>(it->second)]);
        const int v = lay.local_of[static_cast<std::size_t>(it->second)] * lay.L + m.second - 1;
        k.mono[b][static_cast<std::size_t>(v)] += c;
        k.level[b] += c * m.second;
    }
    for (std::size_t b = 0; b < lay.blocks.size(); ++b)
        if (k.level[b] > lay.L)
            throw TruncationExceeded("ket level " + std::to_string(k.level[b]) + " beyond cutoff L=" +
                                     std::to_string(lay.L));
    return k;
}

int floor_int(const Rational& r) { return static_cast<int>(mpz_class(r.floor()).get_si()); }

std::vector<std::vector<Rational>> Engine::final_momenta(const Word& w, const FockState& ket) {
    KetData kd = decompose(ket, lay_);
    std::vector<std::vector<NumTerm>> terms;
    for (const auto& f : w) terms.push_back(numeric_terms(f.current, f.arg, lay_, cfg_));
    std::set<std::vector<Rational>> seen;
    std::vector<std::size_t> choice(terms.size(), 0);
    for (const auto& t : terms)
        if (t.empty()) return {};
    const int nb = static_cast<int>(lay_.bosons.size());
    while (true) {
        std::vector<Rational> l = kd.mom;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const auto& T = terms[t][choice[t]];
            for (const auto& a : T.minus)
                for (int x = 0; x < nb; ++x) l[static_cast<std::size_t>(x)] += lay_.G(x, a.boson) * a.c;
        }
        seen.insert(l);
        std::size_t p = 0;
        while (p < terms.size() && ++choice[p] == terms[p].size()) choice[p++] = 0;
        if (p == terms.size()) break;
    }
    return {seen.begin(), seen.end()};
}

WordResult Engine::run(const Word& w, const FockState& ket, const std::vector<std::string>& vars, int excess,
                       int max_total, bool cut_above) {
    const int M = static_cast<int>(w.size());
    if (M < 1 || M > 3) throw Unsupported("oracle words have 1 to 3 factors");
    WordResult res;
    res.vars = vars;
    res.L = cfg_.L;
    for (const auto& f : w) {
        auto it = std::find(vars.begin(), vars.end(), f.var);
        if (it == vars.end()) throw Error("word variable '" + f.var + "' not among the series variables");
        res.var_of_pos.push_back(static_cast<int>(it - vars.begin()));
    }
    {
        std::set<int> distinct(res.var_of_pos.begin(), res.var_of_pos.end());
        if (distinct.size() != res.var_of_pos.size()) throw Unsupported("a word may use each variable once");
    }
    KetData kd = decompose(ket, lay_);
    std::vector<std::vector<NumTerm>> terms;
    for (const auto& f : w) terms.push_back(numeric_terms(f.current, f.arg, lay_, cfg_));
    for (const auto& t : terms)
        if (t.empty()) return res;

    const int nb = static_cast<int>(lay_.bosons.size());
    const int nblocks = static_cast<int>(lay_.blocks.size());
    const int L = cfg_.L;
    // restricted atoms, computed once per (position, term, block)
    std::vector<std::vector<std::vector<BlockAtoms>>> ra(static_cast<std::size_t>(M));
    for (int t = 0; t < M; ++t)
        for (const auto& T : terms[static_cast<std::size_t>(t)]) {
            std::vector<BlockAtoms> per;
            for (int b = 0; b < nblocks; ++b) per.push_back(restrict_atoms(T, b, lay_));
            ra[static_cast<std::size_t>(t)].push_back(std::move(per));
        }

    std::vector<std::size_t> choice(static_cast<std::size_t>(M), 0);
    while (true) {
        Rational pref(1);
        for (int t = 0; t < M; ++t) pref *= terms[static_cast<std::size_t>(t)][choice[static_cast<std::size_t>(t)]].pref;

        // momentum flow, right to left
        std::vector<std::vector<Rational>> mom_at(static_cast<std::size_t>(M));
        std::vector<Rational> Lam(static_cast<std::size_t>(M));
        std::vector<Rational> l = kd.mom;
        for (int t = M - 1; t >= 0; --t) {
            const auto& T = terms[static_cast<std::size_t>(t)][choice[static_cast<std::size_t>(t)]];
            mom_at[static_cast<std::size_t>(t)] = l;
            for (const auto& a : T.plus) Lam[static_cast<std::size_t>(t)] += a.c * l[static_cast<std::size_t>(a.boson)];
            for (const auto& a : T.minus)
                for (int x = 0; x < nb; ++x) l[static_cast<std::size_t>(x)] += lay_.G(x, a.boson) * a.c;
        }
        // lower cuts in relative exponents
        std::vector<int> lower(static_cast<std::size_t>(M)), upper(static_cast<std::size_t>(M));
        for (int t = 0; t < M; ++t) {
            upper[static_cast<std::size_t>(t)] = -floor_int(Lam[static_cast<std::size_t>(t)] - cfg_.window.hi) + kMargin;
            int win = floor_int(cfg_.window.lo - Lam[static_cast<std::size_t>(t)]) - kMargin;
            lower[static_cast<std::size_t>(t)] = t == M - 1 ? win : std::max(win, -(t + 1) * L - kMargin);
        }
        std::map<BosonSymbol, Rational> sector;
        for (int x = 0; x < nb; ++x)
            if (!l[static_cast<std::size_t>(x)].is_zero()) sector[lay_.bosons[static_cast<std::size_t>(x)]] = l[static_cast<std::size_t>(x)];
        if (!pref.is_zero()) {
            std::vector<Rational> box(static_cast<std::size_t>(M)), prefix(static_cast<std::size_t>(M - 1));
            Rational acc(0);
            for (int t = 0; t < M; ++t) {
                box[static_cast<std::size_t>(t)] = Lam[static_cast<std::size_t>(t)] + Rational(lower[static_cast<std::size_t>(t)]);
                acc += Lam[static_cast<std::size_t>(t)];
                if (t < M - 1) prefix[static_cast<std::size_t>(t)] = acc;
            }
            res.record(sector, box, prefix);
        }

        if (!pref.is_zero()) {
            // touched blocks and caps
            std::vector<int> first(static_cast<std::size_t>(nblocks), -1);
            std::vector<std::vector<bool>> touched(static_cast<std::size_t>(nblocks),
                                                   std::vector<bool>(static_cast<std::size_t>(M), false));
            for (int b = 0; b < nblocks; ++b)
                for (int t = M - 1; t >= 0; --t)
                    if (ra[static_cast<std::size_t>(t)][choice[static_cast<std::size_t>(t)]][static_cast<std::size_t>(b)].touched) {
                        touched[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)] = true;
                        first[static_cast<std::size_t>(b)] = t;
                    }
            auto cap = [&](int b, int t) {
                return t == first[static_cast<std::size_t>(b)] ? std::min(L, kd.level[static_cast<std::size_t>(b)] + excess) : L;
            };
            std::vector<int> tb;
            for (int b = 0; b < nblocks; ++b)
                if (first[static_cast<std::size_t>(b)] >= 0) tb.push_back(b);
            std::vector<const BlockOut*> outs;
            std::vector<std::array<int, 3>> maxrel, minrel;
            bool dead = false;
            for (int b : tb) {
                std::vector<const BlockAtoms*> atoms(static_cast<std::size_t>(M), nullptr);
                std::vector<std::vector<Rational>> mom(static_cast<std::size_t>(M));
                std::vector<int> cut(static_cast<std::size_t>(M), 0), caps(static_cast<std::size_t>(M), 0);
                const auto& B = lay_.blocks[static_cast<std::size_t>(b)];
                for (int t = 0; t < M; ++t) {
                    if (!touched[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)]) continue;
                    atoms[static_cast<std::size_t>(t)] = &ra[static_cast<std::size_t>(t)][choice[static_cast<std::size_t>(t)]][static_cast<std::size_t>(b)];
                    for (int g : B.bosons) mom[static_cast<std::size_t>(t)].push_back(mom_at[static_cast<std::size_t>(t)][static_cast<std::size_t>(g)]);
                    int c = lower[static_cast<std::size_t>(t)];
                    for (int b2 : tb)
                        if (b2 != b && touched[static_cast<std::size_t>(b2)][static_cast<std::size_t>(t)]) c -= cap(b2, t);
                    cut[static_cast<std::size_t>(t)] = c;
                    caps[static_cast<std::size_t>(t)] = cap(b, t);
                }
                const BlockOut& o = block(b, atoms, mom, kd.mono[static_cast<std::size_t>(b)], cut, caps);
                if (o.empty()) {
                    dead = true;
                    break;
                }
                std::array<int, 3> mx{-1000000, -1000000, -1000000}, mn{1000000, 1000000, 1000000};
                for (const auto& [m, D] : o) {
                    auto x = D.max_nonzero();
                    for (std::size_t q = 0; q < 3; ++q) {
                        mx[q] = std::max(mx[q], x[q]);
                        mn[q] = std::min(mn[q], D.lo[q]);
                    }
                }
                outs.push_back(&o);
                maxrel.push_back(mx);
                minrel.push_back(mn);
            }
            if (!dead) {
                const std::size_t nt = tb.size();
                std::vector<std::array<int, 3>> suffix(nt + 1, std::array<int, 3>{0, 0, 0});
                std::vector<std::array<int, 3>> suffix_lo(nt + 1, std::array<int, 3>{0, 0, 0});
                for (std::size_t q = nt; q-- > 0;)
                    for (std::size_t x = 0; x < 3; ++x) {
                        suffix[q][x] = suffix[q + 1][x] + maxrel[q][x];
                        suffix_lo[q][x] = suffix_lo[q + 1][x] + minrel[q][x];
                    }
                std::vector<const Mono*> chosen(nt, nullptr);
                std::function<void(std::size_t, const Dense&, int, int)> rec = [&](std::size_t q, const Dense& P,
                                                                                   int ex, int tl) {
                    if (q == nt) {
                        FockState s;
                        s.momenta = sector;
                        std::vector<const Mono*> per(static_cast<std::size_t>(nblocks));
                        for (int b = 0; b < nblocks; ++b) per[static_cast<std::size_t>(b)] = &kd.mono[static_cast<std::size_t>(b)];
                        for (std::size_t r = 0; r < nt; ++r) per[static_cast<std::size_t>(tb[r])] = chosen[r];
                        for (int b = 0; b < nblocks; ++b) {
                            const auto& B = lay_.blocks[static_cast<std::size_t>(b)];
                            const Mono& m = *per[static_cast<std::size_t>(b)];
                            for (int v = 0; v < B.nvar; ++v)
                                if (m[static_cast<std::size_t>(v)])
                                    s.occupation[{lay_.bosons[static_cast<std::size_t>(B.bosons[static_cast<std::size_t>(v / L)])], v % L + 1}] = m[static_cast<std::size_t>(v)];
                        }
                        GenSeries& g = res.out[s];
                        if (g.nvars() == 0) g = GenSeries(vars);
                        P.for_each([&](const std::array<int, 3>& e, const Rational& c) {
                            Exponents x(vars.size(), Rational(0));
                            for (int t = 0; t < M; ++t)
                                x[static_cast<std::size_t>(res.var_of_pos[static_cast<std::size_t>(t)])] =
                                    Lam[static_cast<std::size_t>(t)] + Rational(e[static_cast<std::size_t>(t)]);
                            g.add_term(x, pref * c);
                        });
                        return;
                    }
                    const BlockOut& o = *outs[q];
                    const int b = tb[q];
                    std::array<int, 3> cut{-1000000, -1000000, -1000000};
                    std::array<int, 3> top{1000000, 1000000, 1000000};
                    for (int t = 0; t < M; ++t) {
                        cut[static_cast<std::size_t>(t)] = lower[static_cast<std::size_t>(t)] - suffix[q + 1][static_cast<std::size_t>(t)];
                        if (cut_above) top[static_cast<std::size_t>(t)] = upper[static_cast<std::size_t>(t)] - suffix_lo[q + 1][static_cast<std::size_t>(t)];
                    }
                    for (const auto& [m, D] : o) {
                        const int lv = mono_level(lay_.blocks[static_cast<std::size_t>(b)], m);
                        const int ex2 = ex + std::max(0, lv - kd.level[static_cast<std::size_t>(b)]);
                        if (ex2 > excess) continue;
                        const int tl2 = tl + lv - kd.level[static_cast<std::size_t>(b)];
                        if (max_total >= 0 && tl2 > max_total) continue;
                        Dense Pn = dense_mul(P, D, cut, top);
                        if (Pn.empty()) continue;
                        chosen[q] = &m;
                        rec(q + 1, Pn, ex2, tl2);
                    }
                };
                rec(0, Dense::one(), 0, ket.level());
            }
        }
        std::size_t p = 0;
        while (p < static_cast<std::size_t>(M) && ++choice[p] == terms[p].size()) choice[p++] = 0;
        if (p == static_cast<std::size_t>(M)) break;
    }
    for (auto& [s, g] : res.out) g.add_rules(res.rules_for(s));
    return res;
}

}  // namespace

// ---------------------------------------------------------------- public API

StateSeries apply_vertex_term(const VertexTerm& T, const FockState& ket, const OracleConfig& cfg,
                              const std::string& var) {
    cfg.validate();
    Engine e(cfg);
    Word w{{CurrentExpr{"term", {T}}, var, {}}};
    return e.run(w, ket, {var}, cfg.L, cfg.L).out;
}

StateSeries evaluate_word(const Word& w, const FockState& ket, const OracleConfig& cfg,
                          const std::vector<std::string>& vars) {
    cfg.validate();
    Engine e(cfg);
    return e.run(w, ket, vars, cfg.bra_level, -1).out;
}

MatrixElement matrix_element(const Word& w, const FockState& bra, const FockState& ket, const OracleConfig& cfg,
                             const std::vector<std::string>& vars) {
    cfg.validate();
    Engine e(cfg);
    MatrixElement me;
    std::vector<Rational> want(e.layout().bosons.size(), Rational(0));
    for (const auto& [X, l] : bra.momenta) want[static_cast<std::size_t>(e.layout().index.at(X))] = l;
    for (const auto& m : e.final_momenta(w, ket))
        if (m == want) me.momentum_allowed = true;
    const int excess = std::max(0, bra.level() - ket.level());
    WordResult r = e.run(w, ket, vars, std::max(excess, 0), -1);
    me.series = r.series_for(bra);
    if (!me.momentum_allowed) me.series = GenSeries(vars);
    return me;
}

std::vector<std::map<BosonSymbol, Rational>> reachable_momenta(const Word& w, const FockState& ket,
                                                               const OracleConfig& cfg) {
    cfg.validate();
    Engine e(cfg);
    std::vector<std::map<BosonSymbol, Rational>> out;
    for (const auto& m : e.final_momenta(w, ket)) {
        std::map<BosonSymbol, Rational> s;
        for (std::size_t x = 0; x < m.size(); ++x)
            if (!m[x].is_zero()) s[e.layout().bosons[x]] = m[x];
        out.push_back(std::move(s));
    }
    return out;
}

GenSeries expand_region(const LinearFactorProduct& f, const std::string& large, const std::string& small,
                        const OracleConfig& cfg) {
    std::vector<std::string> vars{large, small};
    std::sort(vars.begin(), vars.end());
    const int il = large == vars[0] ? 0 : 1, is = 1 - il;
    GenSeries r = GenSeries::constant(vars, f.scalar().eval(cfg.k));
    const int cut = floor_int(cfg.window.lo) - kMargin;
    for (const auto& [fac, ex] : f.factors()) {
        if (!ex.is_constant() || !ex.constant().is_integer())
            throw InternalInconsistency("region expansion of a non-integral power " + ex.str());
        const long e = ex.constant().to_long();
        Rational s = fac.shift.eval(cfg.k) * cfg.hbar;
        // (x - y + s)^e, rewritten as sign * (large - small + s')^e
        Rational sign(1);
        if (fac.x != large) {
            s = -s;
            if (e % 2 != 0) sign = Rational(-1);
        }
        GenSeries g(vars);
        const long nmax = e >= 0 ? e : e - cut;
        for (long n = 0; n <= nmax; ++n) {
            // binom(e,n) large^{e-n} (s - small)^n
            Rational bn = binomial(Rational(e), n);
            for (long m = 0; m <= n; ++m) {
                Exponents x(2);
                x[static_cast<std::size_t>(il)] = Rational(e - n);
                x[static_cast<std::size_t>(is)] = Rational(m);
                Rational c = sign * bn * binomial(Rational(n), m) * pow(s, n - m) * ((m % 2) ? Rational(-1) : Rational(1));
                g.add_term(x, c);
            }
        }
        if (e < 0) g.add_lower_bound(il, Rational(cut));
        r = r * g;
    }
    return r;
}

GenSeries region_difference(const LinearFactorProduct& f, const std::string& u, const std::string& v,
                            const OracleConfig& cfg) {
    return expand_region(f, u, v, cfg) - expand_region(f, v, u, cfg);
}

GenSeries delta_series(const ShiftScalar& s, const OracleConfig& cfg, const std::string& u, const std::string& v) {
    return delta_series(s.eval(cfg.k) * cfg.hbar, u, v, floor_int(cfg.window.lo), -floor_int(-cfg.window.hi),
                        floor_int(cfg.window.lo));
}

std::string relation_name(OracleRelation r) { return "y" + std::to_string(static_cast<int>(r) + 1); }

OracleRelation parse_oracle_relation(const std::string& s) {
    for (int r = 0; r < 8; ++r)
        if (s == "y" + std::to_string(r + 1)) return static_cast<OracleRelation>(r);
    throw Error("unknown relation '" + s + "' (expected y1..y8)");
}

std::vector<FockState> state_sample(const std::vector<const CurrentExpr*>& currents, const OracleConfig& cfg,
                                    MomentumSample sample) {
    std::set<BosonSymbol> touched;
    for (const auto* c : currents)
        for (const auto& t : c->terms)
            for (const auto& X : t.combo.symbols()) touched.insert(X);
    std::vector<FockState> out;
    const FockState vac = FockState::vacuum(cfg.momenta);
    out.push_back(vac);
    for (const auto& X : touched) {
        out.push_back(FockState(vac).excite(X, 1));
        if (cfg.L >= 2) {
            out.push_back(FockState(vac).excite(X, 1, 2));
            out.push_back(FockState(vac).excite(X, 2));
        }
    }
    for (const auto& X : touched) {
        if (X.kind != BosonKind::B) continue;
        BosonSymbol C = BosonSymbol::c(X.i, X.j, cfg.N);
        if (!touched.count(C)) continue;
        // l_b + l_c integral keeps the u-exponents of (b+c) vertex factors in Z
        for (const Rational& lc : {Rational(-1, 2), Rational(1, 3)}) {
            if (sample == MomentumSample::Local && !(Rational(1, 2) + lc).is_integer()) continue;
            FockState s = vac;
            s.momenta[X] += Rational(1, 2);
            s.momenta[C] += lc;
            s.normalize();
            out.push_back(s);
        }
    }
    {
        FockState all = vac;
        int pairs = 0;
        for (const auto& X : touched) {
            if (X.kind != BosonKind::B || !touched.count(BosonSymbol::c(X.i, X.j, cfg.N))) continue;
            all.momenta[X] += Rational(1, 2);
            all.momenta[BosonSymbol::c(X.i, X.j, cfg.N)] += Rational(-1, 2);
            ++pairs;
        }
        all.normalize();
        if (pairs > 1) out.push_back(all);
    }
    FockState a = vac;
    bool any_a = false;
    for (const auto& X : touched)
        if (X.kind == BosonKind::A) {
            a.momenta[X] += Rational(X.i, 5);
            any_a = true;
        }
    if (any_a) {
        a.normalize();
        out.push_back(a);
    }
    return out;
}

namespace {

struct Summand {
    Rational coef;
    GenSeries poly;  // empty vars -> 1
    Word word;
};

struct DeltaTerm {
    Rational coef;
    Rational shift;   // d(u - v - shift)
    Word hword;       // one factor in "v"
};

void compare(OracleReport& rep, Engine& eng, const std::vector<Summand>& sums, const std::vector<DeltaTerm>& deltas,
             const std::vector<std::string>& vars, const FockState& ket, const OracleConfig& cfg) {
    std::vector<WordResult> wr;
    for (const auto& s : sums) wr.push_back(eng.run(s.word, ket, vars, cfg.bra_level, -1, true));
    std::vector<WordResult> hr;
    for (const auto& d : deltas) hr.push_back(eng.run(d.hword, ket, {"v"}, cfg.bra_level, -1));
    std::set<FockState> keys;
    for (const auto& r : wr)
        for (const auto& [s, g] : r.out) keys.insert(s);
    for (const auto& r : hr)
        for (const auto& [s, g] : r.out) keys.insert(s);
    ++rep.kets;
    const int ulo = floor_int(cfg.window.lo), uhi = -floor_int(-cfg.window.hi);
    for (const auto& key : keys) {
        ++rep.bras;
        std::vector<GenSeries> parts;
        for (std::size_t q = 0; q < sums.size(); ++q) {
            GenSeries g = wr[q].series_for(key);
            if (sums[q].poly.nvars() != 0) g = sums[q].poly * g;
            parts.push_back(g.scaled(sums[q].coef));
        }
        for (std::size_t q = 0; q < deltas.size(); ++q) {
            GenSeries f = hr[q].series_for(key);
            GenSeries dt = delta_times(deltas[q].shift, "u", f, ulo, uhi, cfg.window.lo).with_vars(vars);
            parts.push_back(dt.scaled(-deltas[q].coef));
        }
        GenSeries diff(vars);
        for (const auto& p : parts) diff += p;
        std::set<Exponents> support;
        for (const auto& p : parts)
            for (const auto& [e, c] : p.coeffs())
                if (cfg.window.contains(e) && diff.exact_at(e)) support.insert(e);
        auto res = residual(diff, cfg.window);
        rep.positions += support.size();
        rep.support += support.size();
        if (res.nonzero > 0) {
            if (res.max_abs > rep.max_residual) rep.max_residual = res.max_abs;
            if (rep.failures.size() < 8) rep.failures.push_back({ket.str(), key.str(), res.worst, diff.coefficient(res.worst)});
        }
    }
}

GenSeries lin(const std::vector<std::string>& vars, const Rational& cu, const Rational& cv, const Rational& c0) {
    return GenSeries::linear(vars, {cu, cv}, c0);
}

}  // namespace

OracleReport verify_relation_oracle(OracleRelation rel, int i, int j, Sign sign, const std::vector<FockState>& kets,
                                    const OracleConfig& cfg) {
    cfg.validate();
    Engine eng(cfg);
    const AlgebraData& d = eng.algebra();
    if (i < 1 || i >= cfg.N || j < 1 || j >= cfg.N) throw IndexOutOfRange("relation indices out of range");
    OracleReport rep;
    rep.relation = relation_name(rel);
    rep.i = i;
    rep.j = j;
    rep.sign = sign;
    const Rational s(sgn(sign));
    const Rational h = cfg.hbar, k = cfg.k;
    const Rational B = d.b(i, j) * h;
    const auto& opt = cfg.currents;
    auto E = [&](int m, Sign sg) { return sg == Sign::Plus ? build_Eplus(m, d) : build_Eminus(m, d, opt); };
    std::vector<std::string> uv{"u", "v"};
    std::vector<Summand> sums;
    std::vector<DeltaTerm> deltas;
    std::vector<std::string> vars = uv;
    switch (rel) {
        case OracleRelation::Y1: {
            auto Hi = build_H(i, sign, d, opt), Hj = build_H(j, sign, d, opt);
            sums.push_back({Rational(1), {}, {{Hi, "u", {}}, {Hj, "v", {}}}});
            sums.push_back({Rational(-1), {}, {{Hj, "v", {}}, {Hi, "u", {}}}});
            break;
        }
        case OracleRelation::Y2: {
            auto Hp = build_H(i, Sign::Plus, d, opt), Hm = build_H(j, Sign::Minus, d, opt);
            const Rational c = k * h / Rational(2);
            GenSeries lhs = lin(uv, 1, -1, -c + B) * lin(uv, 1, -1, c - B);
            GenSeries rhs = lin(uv, 1, -1, -c - B) * lin(uv, 1, -1, c + B);
            sums.push_back({Rational(1), lhs, {{Hp, "u", {}}, {Hm, "v", {}}}});
            sums.push_back({Rational(-1), rhs, {{Hm, "v", {}}, {Hp, "u", {}}}});
            break;
        }
        case OracleRelation::Y3:
        case OracleRelation::Y4: {
            const Sign hs = rel == OracleRelation::Y3 ? Sign::Plus : Sign::Minus;
            const Rational q = Rational(rel == OracleRelation::Y3 ? 1 : -1) * s * k * h / Rational(4);
            auto H = build_H(i, hs, d, opt);
            auto Ej = E(j, sign);
            sums.push_back({Rational(1), lin(uv, 1, -1, q - s * B), {{H, "u", {}}, {Ej, "v", {}}}});
            sums.push_back({Rational(-1), lin(uv, 1, -1, q + s * B), {{Ej, "v", {}}, {H, "u", {}}}});
            break;
        }
        case OracleRelation::Y5:
        case OracleRelation::Y8: {
            if (rel == OracleRelation::Y8 && std::abs(i - j) <= 1) {
                rep.vacuous = true;
                return rep;
            }
            auto Ei = E(i, sign), Ej = E(j, sign);
            const Rational b = rel == OracleRelation::Y8 ? Rational(0) : B;
            sums.push_back({Rational(1), lin(uv, 1, -1, -s * b), {{Ei, "u", {}}, {Ej, "v", {}}}});
            sums.push_back({Rational(-1), lin(uv, 1, -1, s * b), {{Ej, "v", {}}, {Ei, "u", {}}}});
            break;
        }
        case OracleRelation::Y6: {
            auto Ep = build_Eplus(i, d), Em = build_Eminus(j, d, opt);
            sums.push_back({Rational(1), {}, {{Ep, "u", {}}, {Em, "v", {}}}});
            sums.push_back({Rational(-1), {}, {{Em, "v", {}}, {Ep, "u", {}}}});
            if (i == j) {
                const Rational c = k * h / Rational(2);
                deltas.push_back({Rational(1) / h, c, {{build_H(i, Sign::Plus, d, opt), "v", ShiftScalar::of_k(Rational(1, 4))}}});
                deltas.push_back({Rational(-1) / h, -c, {{build_H(i, Sign::Minus, d, opt), "v", ShiftScalar::of_k(Rational(-1, 4))}}});
            }
            break;
        }
        case OracleRelation::Y7: {
            if (std::abs(i - j) != 1) {
                rep.vacuous = true;
                return rep;
            }
            vars = {"u1", "u2", "v"};
            auto Ei = E(i, sign), Ej = E(j, sign);
            for (auto [a, b] : {std::pair<std::string, std::string>{"u1", "u2"}, {"u2", "u1"}}) {
                sums.push_back({Rational(1), {}, {{Ei, a, {}}, {Ei, b, {}}, {Ej, "v", {}}}});
                sums.push_back({Rational(-2), {}, {{Ei, a, {}}, {Ej, "v", {}}, {Ei, b, {}}}});
                sums.push_back({Rational(1), {}, {{Ej, "v", {}}, {Ei, a, {}}, {Ei, b, {}}}});
            }
            break;
        }
    }
    for (const auto& ket : kets) compare(rep, eng, sums, deltas, vars, ket, cfg);
    return rep;
}

std::vector<FockState> relation_sample(OracleRelation rel, int i, int j, Sign sign, const OracleConfig& cfg,
                                       MomentumSample sample) {
    cfg.validate();
    AlgebraData d = build_algebra_data(cfg.N);
    std::vector<CurrentExpr> cs;
    const auto& opt = cfg.currents;
    auto E = [&](int m, Sign sg) { return sg == Sign::Plus ? build_Eplus(m, d) : build_Eminus(m, d, opt); };
    switch (rel) {
        case OracleRelation::Y1: cs = {build_H(i, sign, d, opt), build_H(j, sign, d, opt)}; break;
        case OracleRelation::Y2: cs = {build_H(i, Sign::Plus, d, opt), build_H(j, Sign::Minus, d, opt)}; break;
        case OracleRelation::Y3: cs = {build_H(i, Sign::Plus, d, opt), E(j, sign)}; break;
        case OracleRelation::Y4: cs = {build_H(i, Sign::Minus, d, opt), E(j, sign)}; break;
        case OracleRelation::Y6: cs = {build_Eplus(i, d), build_Eminus(j, d, opt)}; break;
        default: cs = {E(i, sign), E(j, sign)}; break;
    }
    std::vector<const CurrentExpr*> ptrs;
    for (const auto& c : cs) ptrs.push_back(&c);
    return state_sample(ptrs, cfg, sample);
}

OracleReport verify_relation_oracle(OracleRelation rel, int i, int j, Sign sign, const OracleConfig& cfg) {
    return verify_relation_oracle(rel, i, j, sign, relation_sample(rel, i, j, sign, cfg), cfg);
}

OracleReport cross_engine_check(OracleRelation rel, int i, int j, Sign sign, const std::vector<FockState>& kets,
                                const OracleConfig& cfg) {
    cfg.validate();
    if (rel != OracleRelation::Y2 && rel != OracleRelation::Y3)
        throw Unsupported("cross-engine check covers y2 and y3");
    Engine eng(cfg);
    const AlgebraData& d = eng.algebra();
    OracleReport rep;
    rep.relation = relation_name(rel) + "-cross";
    rep.i = i;
    rep.j = j;
    rep.sign = sign;
    const auto& opt = cfg.currents;
    CurrentExpr T1 = build_H(i, Sign::Plus, d, opt);
    CurrentExpr T2 = rel == OracleRelation::Y2 ? build_H(j, Sign::Minus, d, opt)
                                               : (sign == Sign::Plus ? build_Eplus(j, d) : build_Eminus(j, d, opt));
    std::vector<std::string> uv{"u", "v"};
    std::vector<Summand> sums;
    for (const auto& a : T1.terms)
        for (const auto& b : T2.terms) {
            LinearFactorProduct ef = exchange_factor(a, "u", b, "v", d);
            GenSeries P = GenSeries::constant(uv, ef.scalar().eval(cfg.k));
            GenSeries Q = GenSeries::constant(uv, Rational(1));
            for (const auto& [f, e] : ef.factors()) {
                const long n = e.constant().to_long();
                Rational sh = f.shift.eval(cfg.k) * cfg.hbar;
                GenSeries lf = f.x == "u" ? lin(uv, 1, -1, sh) : lin(uv, -1, 1, sh);
                for (long r = 0; r < std::abs(n); ++r) (n > 0 ? P : Q) = (n > 0 ? P : Q) * lf;
            }
            CurrentExpr ca{T1.label, {a}}, cb{T2.label, {b}};
            sums.push_back({Rational(1), Q, {{ca, "u", {}}, {cb, "v", {}}}});
            sums.push_back({Rational(-1), P, {{cb, "v", {}}, {ca, "u", {}}}});
        }
    for (const auto& ket : kets) compare(rep, eng, sums, {}, uv, ket, cfg);
    return rep;
}

namespace {
bool has_a_oscillator(const FockState& s) {
    for (const auto& [m, c] : s.occupation)
        if (m.first.kind == BosonKind::A) return true;
    return false;
}
bool has_a_momentum(const FockState& s) {
    for (const auto& [X, l] : s.momenta)
        if (X.kind == BosonKind::A) return true;
    return false;
}
}  // namespace

OracleReport oracle_variant_invariance(const std::vector<FockState>& kets, const OracleConfig& cfg,
                                       bool a_vacuum_sector) {
    cfg.validate();
    OracleConfig alt = cfg;
    alt.currents.variant = cfg.currents.variant == AVariant::Standard ? AVariant::Alternate : AVariant::Standard;
    Engine e1(cfg), e2(alt);
    const AlgebraData& d = e1.algebra();
    OracleReport rep;
    rep.relation = "variant-invariance";
    std::vector<std::pair<CurrentExpr, CurrentExpr>> pairs;
    for (int i = 1; i < cfg.N; ++i) {
        pairs.push_back({build_H(i, Sign::Plus, d, cfg.currents), build_H(i, Sign::Plus, d, alt.currents)});
        pairs.push_back({build_H(i, Sign::Minus, d, cfg.currents), build_H(i, Sign::Minus, d, alt.currents)});
        pairs.push_back({build_Eminus(i, d, cfg.currents), build_Eminus(i, d, alt.currents)});
    }
    for (const auto& ket : kets) {
        if (a_vacuum_sector && (has_a_oscillator(ket) || has_a_momentum(ket))) continue;
        ++rep.kets;
        for (const auto& [c1, c2] : pairs) {
            WordResult r1 = e1.run({{c1, "u", {}}}, ket, {"u"}, cfg.bra_level, -1);
            WordResult r2 = e2.run({{c2, "u", {}}}, ket, {"u"}, cfg.bra_level, -1);
            std::set<FockState> keys;
            for (const auto& [s, g] : r1.out) keys.insert(s);
            for (const auto& [s, g] : r2.out) keys.insert(s);
            for (const auto& key : keys) {
                if (a_vacuum_sector && has_a_oscillator(key)) continue;
                ++rep.bras;
                GenSeries a = r1.series_for(key), b = r2.series_for(key);
                GenSeries diff = a - b;
                rep.positions += exact_support(a, cfg.window);
                rep.support = rep.positions;
                auto res = residual(diff, cfg.window);
                if (res.nonzero > 0) {
                    if (res.max_abs > rep.max_residual) rep.max_residual = res.max_abs;
                    if (rep.failures.size() < 8)
                        rep.failures.push_back({ket.str(), c1.label + " " + key.str(), res.worst, diff.coefficient(res.worst)});
                }
            }
        }
    }
    return rep;
}

}  // namespace yangian
