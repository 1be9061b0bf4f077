#include "modat/gfla/poly.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "modat/error.hpp"

namespace modat::gfla {

FqPolynomial::FqPolynomial(FieldPtr f, std::vector<Fq> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) { trim(); }

void FqPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPolynomial FqPolynomial::monic() const {
    if (c_.empty() || c_.back() == 1) return *this;
    Fq inv = f_->inv(c_.back());
    std::vector<Fq> c(c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f_->mul(c_[i], inv);
    return FqPolynomial(f_, std::move(c));
}

Fq FqPolynomial::eval(Fq a) const {
    Fq r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, a), c_[i]);
    return r;
}

FqPolynomial FqPolynomial::derivative() const {
    if (c_.size() <= 1) return FqPolynomial(f_);
    std::vector<Fq> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = f_->mul(f_->from_int(std::int64_t(i)), c_[i]);
    return FqPolynomial(f_, std::move(d));
}

bool FqPolynomial::operator<(const FqPolynomial& o) const noexcept {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string FqPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream s;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) s << " + ";
        first = false;
        if (i == 0) {
            s << c_[i];
            continue;
        }
        if (c_[i] != 1) s << c_[i] << '*';
        s << 'x';
        if (i > 1) s << '^' << i;
    }
    return s.str();
}

FqPolynomial operator+(const FqPolynomial& a, const FqPolynomial& b) {
    const auto& F = *a.f_;
    std::vector<Fq> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(i), b.coeff(i));
    return FqPolynomial(a.f_, std::move(c));
}

FqPolynomial operator-(const FqPolynomial& a, const FqPolynomial& b) {
    const auto& F = *a.f_;
    std::vector<Fq> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(i), b.coeff(i));
    return FqPolynomial(a.f_, std::move(c));
}

FqPolynomial operator*(const FqPolynomial& a, const FqPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return FqPolynomial(a.f_ ? a.f_ : b.f_);
    const auto& F = *a.f_;
    std::vector<Fq> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!a.c_[i]) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = F.add(c[i + j], F.mul(a.c_[i], b.c_[j]));
    }
    return FqPolynomial(a.f_, std::move(c));
}

std::pair<FqPolynomial, FqPolynomial> divmod(const FqPolynomial& a, const FqPolynomial& b) {
    if (b.is_zero()) fail(Errc::InvalidArgument, "polynomial division by zero");
    const auto& F = *b.field();
    std::vector<Fq> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {FqPolynomial(b.field()), a};
    std::vector<Fq> q(std::size_t(a.degree() - db + 1), 0);
    Fq linv = F.inv(b.leading());
    for (int i = a.degree(); i >= db; --i) {
        Fq c = r[std::size_t(i)];
        if (!c) continue;
        c = F.mul(c, linv);
        q[std::size_t(i - db)] = c;
        for (int j = 0; j <= db; ++j) {
            auto& t = r[std::size_t(i - db + j)];
            t = F.sub(t, F.mul(c, b.coeff(std::size_t(j))));
        }
    }
    r.resize(std::size_t(db));
    return {FqPolynomial(b.field(), std::move(q)), FqPolynomial(b.field(), std::move(r))};
}

FqPolynomial operator%(const FqPolynomial& a, const FqPolynomial& b) { return divmod(a, b).second; }
FqPolynomial operator/(const FqPolynomial& a, const FqPolynomial& b) { return divmod(a, b).first; }

FqPolynomial gcd(const FqPolynomial& a, const FqPolynomial& b) {
    FqPolynomial x = a, y = b;
    while (!y.is_zero()) {
        FqPolynomial r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

FqPolynomial lcm(const FqPolynomial& a, const FqPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return FqPolynomial(a.field());
    return (a / gcd(a, b) * b).monic();
}

FqPolynomial powmod(FqPolynomial base, std::uint64_t e, const FqPolynomial& mod) {
    FqPolynomial r = FqPolynomial::constant(mod.field(), 1) % mod;
    base = base % mod;
    while (e) {
        if (e & 1) r = r * base % mod;
        e >>= 1;
        if (e) base = base * base % mod;
    }
    return r;
}

namespace {

// p-th root of a polynomial whose derivative vanishes
FqPolynomial pth_root(const FqPolynomial& f) {
    const auto& F = *f.field();
    std::uint64_t e = F.q() / F.p();  // a^(q/p) is the p-th root of a
    std::vector<Fq> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += F.p()) c.push_back(F.pow(f.coeffs()[i], e));
    return FqPolynomial(f.field(), std::move(c));
}

void squarefree(const FqPolynomial& f, unsigned mult, std::map<FqPolynomial, unsigned>& out_sqf) {
    if (f.degree() <= 0) return;
    const auto& F = *f.field();
    FqPolynomial d = f.derivative();
    if (d.is_zero()) {
        squarefree(pth_root(f), mult * F.p(), out_sqf);
        return;
    }
    FqPolynomial c = gcd(f, d);
    FqPolynomial w = f / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        FqPolynomial y = gcd(w, c);
        FqPolynomial z = w / y;
        if (z.degree() > 0) out_sqf[z.monic()] += i * mult;
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) squarefree(pth_root(c), mult * F.p(), out_sqf);
}

std::vector<std::pair<int, FqPolynomial>> distinct_degree(FqPolynomial rest) {
    std::vector<std::pair<int, FqPolynomial>> out;
    const auto& F = *rest.field();
    FqPolynomial x = FqPolynomial::x(rest.field());
    FqPolynomial h = x % rest;
    int d = 0;
    while (rest.degree() >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, F.q(), rest);
        FqPolynomial g = gcd(h - x, rest);
        if (g.degree() > 0) {
            out.emplace_back(d, g);
            rest = (rest / g).monic();
            h = h % rest;
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest.degree(), rest);
    return out;
}

void equal_degree(const FqPolynomial& g, int d, std::mt19937_64& rng, std::vector<FqPolynomial>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    const auto& F = *g.field();
    std::uniform_int_distribution<Fq> coef(0, F.q() - 1);
    for (;;) {
        std::vector<Fq> ac(std::size_t(g.degree()));
        for (auto& v : ac) v = coef(rng);
        FqPolynomial a(g.field(), ac);
        if (a.degree() <= 0) continue;
        FqPolynomial b(g.field());
        if (F.p() == 2) {
            // absolute trace of GF(q^d) over GF(2)
            FqPolynomial t = a % g;
            b = t;
            for (std::uint32_t i = 1; i < F.k() * std::uint32_t(d); ++i) {
                t = t * t % g;
                b = b + t;
            }
        } else {
            FqPolynomial t = a % g, acc = t;
            for (int i = 1; i < d; ++i) {
                t = powmod(t, F.q(), g);
                acc = acc * t % g;
            }
            b = powmod(acc, (F.q() - 1) / 2, g) - FqPolynomial::constant(g.field(), 1);
        }
        FqPolynomial u = gcd(g, b);
        if (u.degree() > 0 && u.degree() < g.degree()) {
            equal_degree(u, d, rng, out);
            equal_degree((g / u).monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<PolyFactor> factor(const FqPolynomial& f) {
    if (f.is_zero()) fail(Errc::InvalidArgument, "factor of zero polynomial");
    std::map<FqPolynomial, unsigned> sqf;
    squarefree(f.monic(), 1, sqf);
    std::map<FqPolynomial, unsigned> acc;
    std::mt19937_64 rng(0x9E3779B97F4A7C15ull);
    for (const auto& [g, m] : sqf)
        for (const auto& [d, part] : distinct_degree(g)) {
            std::vector<FqPolynomial> irr;
            equal_degree(part, d, rng, irr);
            for (auto& h : irr) acc[h] += m;
        }
    std::vector<PolyFactor> out;
    for (auto& [g, m] : acc) out.push_back({g, m});
    return out;
}

bool is_irreducible(const FqPolynomial& f) {
    if (f.degree() <= 0) return false;
    auto fs = factor(f);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

}  // namespace modat::gfla
