#include "modat/cyclo/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "modat/error.hpp"

namespace modat::cyclo {

namespace {

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t mod_exp(std::int64_t k, std::uint64_t n) {
    std::int64_t r = k % std::int64_t(n);
    return std::uint64_t(r < 0 ? r + std::int64_t(n) : r);
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i * i != n) d.push_back(n / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

std::mutex g_mu;

// v (any length) reduced modulo Phi_n, result has phi(n) entries
std::vector<Rational> reduce(std::vector<Rational> v, std::uint64_t n) {
    const auto& phi = cyclotomic_poly(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = v.size(); i-- > deg;) {
        if (v[i] == 0) continue;
        Rational c = v[i];
        for (std::size_t j = 0; j <= deg; ++j)
            if (phi[j]) v[i - deg + j] -= c * phi[j];
    }
    v.resize(deg);
    return v;
}

// embedding Q(zeta_d) -> Q(zeta_n) and its left inverse on the image
struct Subfield {
    std::vector<std::vector<Rational>> embed;  // phi(n) x phi(d)
    std::vector<std::size_t> rows;             // phi(d) rows where embed is invertible
    std::vector<std::vector<Rational>> inv;    // inverse of embed restricted to rows
};

const Subfield& subfield(std::uint64_t d, std::uint64_t n) {
    static std::map<std::pair<std::uint64_t, std::uint64_t>, Subfield> cache;
    std::lock_guard<std::mutex> lk(g_mu);
    auto key = std::make_pair(d, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const std::size_t pd = euler_phi(d), pn = euler_phi(n);
    Subfield s;
    s.embed.assign(pn, std::vector<Rational>(pd));
    for (std::size_t j = 0; j < pd; ++j) {
        std::vector<Rational> e(n, 0);
        e[(j * (n / d)) % n] = 1;
        auto col = reduce(std::move(e), n);
        for (std::size_t i = 0; i < pn; ++i) s.embed[i][j] = col[i];
    }
    // choose rows greedily by elimination
    std::vector<std::vector<Rational>> basis;
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < pn && s.rows.size() < pd; ++i) {
        auto r = s.embed[i];
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (r[piv[b]] != 0) {
                Rational c = r[piv[b]];
                for (std::size_t j = 0; j < pd; ++j) r[j] -= c * basis[b][j];
            }
        std::size_t p = 0;
        while (p < pd && r[p] == 0) ++p;
        if (p == pd) continue;
        Rational c = r[p];
        for (auto& x : r) x /= c;
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (basis[b][p] != 0) {
                Rational e = basis[b][p];
                for (std::size_t j = 0; j < pd; ++j) basis[b][j] -= e * r[j];
            }
        basis.push_back(r);
        piv.push_back(p);
        s.rows.push_back(i);
    }
    // invert the pd x pd block
    std::vector<std::vector<Rational>> a(pd, std::vector<Rational>(2 * pd, 0));
    for (std::size_t i = 0; i < pd; ++i) {
        for (std::size_t j = 0; j < pd; ++j) a[i][j] = s.embed[s.rows[i]][j];
        a[i][pd + i] = 1;
    }
    for (std::size_t c = 0; c < pd; ++c) {
        std::size_t r = c;
        while (a[r][c] == 0) ++r;
        std::swap(a[r], a[c]);
        Rational x = a[c][c];
        for (auto& v : a[c]) v /= x;
        for (std::size_t i = 0; i < pd; ++i)
            if (i != c && a[i][c] != 0) {
                Rational e = a[i][c];
                for (std::size_t j = 0; j < 2 * pd; ++j) a[i][j] -= e * a[c][j];
            }
    }
    s.inv.assign(pd, std::vector<Rational>(pd));
    for (std::size_t i = 0; i < pd; ++i)
        for (std::size_t j = 0; j < pd; ++j) s.inv[i][j] = a[i][pd + j];
    return cache.emplace(key, std::move(s)).first->second;
}

std::string rat_str(const Rational& r) {
    std::ostringstream s;
    s << numerator(r);
    if (denominator(r) != 1) s << '/' << denominator(r);
    return s.str();
}

Rational parse_rat(const std::string& t) {
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(t));
        Integer num(t.substr(0, slash)), den(t.substr(slash + 1));
        if (den == 0) fail(Errc::Format, "zero denominator in '" + t + "'");
        return Rational(num, den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(Errc::Format, "bad rational '" + t + "'");
    }
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n, m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            r -= r / p;
        }
    if (m > 1) r -= r / m;
    return r;
}

const std::vector<std::int64_t>& cyclotomic_poly(std::uint64_t n) {
    static std::map<std::uint64_t, std::vector<std::int64_t>> cache;
    static std::recursive_mutex mu;
    std::lock_guard<std::recursive_mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n == 0) fail(Errc::InvalidArgument, "conductor 0");
    std::vector<std::int64_t> f(n + 1, 0);
    f[0] = -1;
    f[n] = 1;
    for (auto d : divisors(n)) {
        if (d == n) continue;
        const auto& g = cyclotomic_poly(d);
        // exact division by the monic g
        std::size_t dg = g.size() - 1, df = f.size() - 1;
        std::vector<std::int64_t> q(df - dg + 1, 0);
        for (std::size_t i = df + 1; i-- > dg;) {
            std::int64_t c = f[i];
            q[i - dg] = c;
            if (c)
                for (std::size_t j = 0; j <= dg; ++j) f[i - dg + j] -= c * g[j];
        }
        f = std::move(q);
    }
    return cache.emplace(n, std::move(f)).first->second;
}

Cyclotomic Cyclotomic::zeta(std::uint64_t n, std::int64_t k) {
    if (n == 0) fail(Errc::InvalidArgument, "zeta of order 0");
    std::vector<Rational> e(n, 0);
    e[mod_exp(k, n)] = 1;
    return from_exponents(n, e);
}

Cyclotomic Cyclotomic::from_coeffs(std::uint64_t n, std::vector<Rational> c) {
    if (n == 0) fail(Errc::InvalidArgument, "conductor 0");
    Cyclotomic x;
    x.n_ = n;
    x.c_ = reduce(std::move(c), n);
    x.normalize();
    return x;
}

Cyclotomic Cyclotomic::from_exponents(std::uint64_t n, const std::vector<Rational>& c) {
    if (n == 0) fail(Errc::InvalidArgument, "conductor 0");
    std::vector<Rational> e(n, 0);
    for (std::size_t i = 0; i < c.size(); ++i) e[i % n] += c[i];
    return from_coeffs(n, std::move(e));
}

void Cyclotomic::normalize() {
    if (n_ % 4 == 2) {
        // zeta_2m = -zeta_m^((m+1)/2) for odd m
        std::uint64_t m = n_ / 2;
        std::vector<Rational> e(m, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            std::uint64_t k = (i * ((m + 1) / 2)) % m;
            e[k] += (i % 2 ? -c_[i] : c_[i]);
        }
        n_ = m;
        c_ = reduce(std::move(e), m);
    }
    bool rational = true;
    for (std::size_t i = 1; i < c_.size(); ++i) rational = rational && c_[i] == 0;
    if (rational) {
        Rational r = c_.empty() ? Rational(0) : c_[0];
        n_ = 1;
        c_ = {r};
        return;
    }
    for (auto d : divisors(n_)) {
        if (d == 1 || d == n_ || d % 4 == 2) continue;
        const Subfield& s = subfield(d, n_);
        const std::size_t pd = s.inv.size();
        std::vector<Rational> x(pd, 0);
        for (std::size_t i = 0; i < pd; ++i)
            for (std::size_t j = 0; j < pd; ++j)
                if (s.inv[i][j] != 0) x[i] += s.inv[i][j] * c_[s.rows[j]];
        bool ok = true;
        for (std::size_t r = 0; r < c_.size() && ok; ++r) {
            Rational acc = 0;
            for (std::size_t j = 0; j < pd; ++j)
                if (s.embed[r][j] != 0) acc += s.embed[r][j] * x[j];
            ok = acc == c_[r];
        }
        if (ok) {
            n_ = d;
            c_ = std::move(x);
            return;
        }
    }
}

bool Cyclotomic::is_integer() const { return n_ == 1 && denominator(c_[0]) == 1; }

Rational Cyclotomic::rational() const {
    if (n_ != 1) fail(Errc::InvalidArgument, "value " + to_string() + " is not rational");
    return c_[0];
}

Integer Cyclotomic::integer() const {
    if (!is_integer()) fail(Errc::NonIntegral, "value " + to_string() + " is not an integer");
    return numerator(c_[0]);
}

std::vector<Rational> Cyclotomic::coeffs_at(std::uint64_t m) const {
    if (m % n_) fail(Errc::InvalidArgument, "conductor " + std::to_string(n_) + " does not divide " + std::to_string(m));
    if (m == n_) return c_;
    std::vector<Rational> e(m, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) e[i * (m / n_)] += c_[i];
    return reduce(std::move(e), m);
}

Cyclotomic Cyclotomic::galois(std::int64_t k) const {
    std::uint64_t kk = mod_exp(k, n_);
    if (gcd_u(kk == 0 ? n_ : kk, n_) != 1 && n_ != 1)
        fail(Errc::NonUnitGaloisExponent, std::to_string(k) + " is not a unit mod " + std::to_string(n_));
    if (n_ == 1) return *this;
    std::vector<Rational> e(n_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) e[(i * kk) % n_] += c_[i];
    return from_coeffs(n_, std::move(e));
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == 1 && b.n_ == 1) return Cyclotomic(a.c_[0] + b.c_[0]);
    std::uint64_t m = std::lcm(a.n_, b.n_);
    auto x = a.coeffs_at(m), y = b.coeffs_at(m);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return Cyclotomic::from_coeffs(m, std::move(x));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == 1 || b.n_ == 1) {
        const Cyclotomic& s = a.n_ == 1 ? a : b;
        const Cyclotomic& v = a.n_ == 1 ? b : a;
        if (s.c_[0] == 0) return Cyclotomic(0);
        Cyclotomic r = v;
        for (auto& c : r.c_) c *= s.c_[0];
        return r;
    }
    std::uint64_t m = std::lcm(a.n_, b.n_);
    auto x = a.coeffs_at(m), y = b.coeffs_at(m);
    std::vector<Rational> prod(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0) prod[i + j] += x[i] * y[j];
    }
    return Cyclotomic::from_coeffs(m, std::move(prod));
}

Cyclotomic operator/(const Cyclotomic& a, const Rational& d) {
    if (d == 0) fail(Errc::InvalidArgument, "division by zero");
    Cyclotomic r = a;
    for (auto& c : r.c_) c /= d;
    return r;
}

bool Cyclotomic::operator<(const Cyclotomic& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return c_ < o.c_;
}

std::string Cyclotomic::to_string() const {
    std::string s = "cyc(" + std::to_string(n_) + ")[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += rat_str(c_[i]);
    }
    return s + "]";
}

Cyclotomic Cyclotomic::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.rfind("cyc(", 0) != 0) fail(Errc::Format, "expected cyc(n)[...] in '" + text + "'");
    auto close = s.find(')');
    auto lb = s.find('[', close == std::string::npos ? 0 : close);
    if (close == std::string::npos || lb != close + 1 || s.back() != ']') fail(Errc::Format, "bad cyclotomic '" + text + "'");
    std::uint64_t n = 0;
    try {
        n = std::stoull(s.substr(4, close - 4));
    } catch (const std::exception&) {
        fail(Errc::Format, "bad conductor in '" + text + "'");
    }
    if (n == 0) fail(Errc::Format, "conductor 0 in '" + text + "'");
    std::vector<Rational> c;
    std::string body = s.substr(lb + 1, s.size() - lb - 2);
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(parse_rat(tok));
    if (c.size() != euler_phi(n)) fail(Errc::Format, "expected " + std::to_string(euler_phi(n)) + " coefficients in '" + text + "'");
    return from_coeffs(n, std::move(c));
}

Cyclotomic sqrt_int(std::int64_t d) {
    if (d == 0) return Cyclotomic(0);
    std::int64_t m = d < 0 ? -d : d;
    Cyclotomic r(1);
    Integer square = 1;
    for (std::int64_t p = 2; p * p <= m; ++p)
        while (m % (p * p) == 0) {
            m /= p * p;
            square *= p;
        }
    std::int64_t rest = m;
    for (std::int64_t p = 2; p <= rest; ++p) {
        if (rest % p) continue;
        rest /= p;
        if (p == 2) {
            r = r * (Cyclotomic::zeta(8, 1) + Cyclotomic::zeta(8, 7));
            continue;
        }
        // Gauss sum: sqrt(p) for p = 1 mod 4, i*sqrt(p) otherwise
        std::vector<Rational> e(p, 0);
        std::vector<bool> qr(p, false);
        for (std::int64_t a = 1; a < p; ++a) qr[(a * a) % p] = true;
        for (std::int64_t a = 1; a < p; ++a) e[a] = qr[a] ? 1 : -1;
        Cyclotomic g = Cyclotomic::from_exponents(p, e);
        if (p % 4 == 3) g = g * Cyclotomic::zeta(4, 3);
        r = r * g;
    }
    if (d < 0) r = r * Cyclotomic::zeta(4, 1);
    return r * Cyclotomic(Rational(square));
}

namespace {

struct Quadratic {
    Rational t, s;
    std::int64_t N;  // squarefree, x = t + s*sqrt(N)
};

std::optional<Quadratic> as_quadratic(const Cyclotomic& x) {
    std::uint64_t n = x.conductor();
    if (n == 1) return std::nullopt;
    std::set<Cyclotomic> orbit;
    for (std::uint64_t k = 1; k < n && orbit.size() <= 2; ++k)
        if (std::gcd(k, n) == 1) orbit.insert(x.galois(std::int64_t(k)));
    if (orbit.size() != 2) return std::nullopt;
    Cyclotomic other = *orbit.begin() == x ? *orbit.rbegin() : *orbit.begin();
    Rational t = ((x + other) / Rational(2)).rational();
    Cyclotomic y = x - Cyclotomic(t);
    Rational r = (y * y).rational();
    Integer num = numerator(r), den = denominator(r);
    Integer m = num * den;
    bool neg = m < 0;
    if (neg) m = -m;
    Integer f = 1;
    for (Integer p = 2; p * p <= m; ++p)
        while (m % (p * p) == 0) {
            m /= p * p;
            f *= p;
        }
    if (m > Integer(1) << 40) return std::nullopt;
    std::int64_t N = static_cast<std::int64_t>(m) * (neg ? -1 : 1);
    Cyclotomic root = sqrt_int(N);
    Rational s(f, den);
    if (root * Cyclotomic(s) == y) return Quadratic{t, s, N};
    if (root * Cyclotomic(-s) == y) return Quadratic{t, -s, N};
    return std::nullopt;
}

std::string lin(const Rational& a, const Rational& b, const std::string& sym) {
    std::string s;
    if (a != 0) s = rat_str(a);
    if (b == 0) return s.empty() ? "0" : s;
    std::string coef = b == 1 ? "" : b == -1 ? "-" : rat_str(b) + "*";
    if (!s.empty() && b > 0)
        s += "+";
    return s + coef + sym;
}

}  // namespace

std::string Cyclotomic::pretty() const {
    if (n_ == 1) return rat_str(c_[0]);
    if (auto q = as_quadratic(*this)) {
        std::int64_t M = q->N < 0 ? -q->N : q->N;
        std::int64_t r4 = ((q->N % 4) + 4) % 4;
        if (r4 == 1) {
            // sqrt(N) = 2 bM + 1
            Rational a = q->t + q->s, b = 2 * q->s;
            std::string sym = "b" + std::to_string(M);
            if (a == -1 && b == -1) return sym + "*";
            return lin(a, b, sym);
        }
        if (q->N < 0) return lin(q->t, q->s, M == 1 ? "i" : "i" + std::to_string(M));
        return lin(q->t, q->s, "r" + std::to_string(M));
    }
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        std::string term = i == 0 ? "1" : "z" + std::to_string(n_) + (i == 1 ? "" : "^" + std::to_string(i));
        Rational c = c_[i];
        if (!s.empty()) s += c > 0 ? "+" : "";
        if (i == 0)
            s += rat_str(c);
        else if (c == 1)
            s += term;
        else if (c == -1)
            s += "-" + term;
        else
            s += rat_str(c) + "*" + term;
    }
    return s;
}

namespace {

class ValueParser {
public:
    explicit ValueParser(const std::string& s) : s_(s) {}

    Cyclotomic run() {
        Cyclotomic v = expr();
        skip();
        if (i_ != s_.size()) bad("trailing input");
        return v;
    }

private:
    [[noreturn]] void bad(const std::string& why) { fail(Errc::Format, "bad value '" + s_ + "': " + why); }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    std::uint64_t number() {
        skip();
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j == i_) bad("expected a number");
        std::uint64_t v = std::stoull(s_.substr(i_, j - i_));
        i_ = j;
        return v;
    }
    Cyclotomic expr() {
        Cyclotomic v = eat('-') ? -term() : (eat('+'), term());
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }
    Cyclotomic term() {
        Cyclotomic v = factor();
        while (eat('*')) v = v * factor();
        return v;
    }
    Cyclotomic factor() {
        skip();
        if (i_ >= s_.size()) bad("unexpected end");
        if (eat('(')) {
            Cyclotomic v = expr();
            if (!eat(')')) bad("missing ')'");
            return v;
        }
        if (eat('-')) return -factor();
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num(number());
            if (i_ < s_.size() && s_[i_] == '/') {
                ++i_;
                std::uint64_t den = number();
                if (den == 0) bad("zero denominator");
                return Cyclotomic(Rational(num, Integer(den)));
            }
            return Cyclotomic(Rational(num));
        }
        if (s_.compare(i_, 4, "cyc(") == 0) {
            std::size_t j = s_.find(']', i_);
            if (j == std::string::npos) bad("unterminated cyc()");
            Cyclotomic v = Cyclotomic::parse(s_.substr(i_, j + 1 - i_));
            i_ = j + 1;
            return v;
        }
        ++i_;
        std::uint64_t n = 1;
        bool has_n = i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
        if (has_n) n = number();
        if (n == 0) bad("index 0");
        switch (c) {
            case 'z': {
                std::int64_t k = 1;
                if (eat('^')) {
                    bool neg = eat('-');
                    k = std::int64_t(number()) * (neg ? -1 : 1);
                }
                return Cyclotomic::zeta(n, k);
            }
            case 'b': {
                std::int64_t N = n % 4 == 1 ? std::int64_t(n) : -std::int64_t(n);
                if (((N % 4) + 4) % 4 != 1) bad("b" + std::to_string(n) + " needs n odd");
                Cyclotomic b = (sqrt_int(N) - Cyclotomic(1)) / Rational(2);
                // a star right after bN always means the conjugate
                if (eat('*')) return Cyclotomic(-1) - b;
                return b;
            }
            case 'i':
                return sqrt_int(-std::int64_t(n));
            case 'r':
                return sqrt_int(std::int64_t(n));
            default:
                bad(std::string("unknown symbol '") + c + "'");
        }
    }

    std::string s_;
    std::size_t i_ = 0;
};

}  // namespace

Cyclotomic parse_value(const std::string& s) { return ValueParser(s).run(); }

Cyclotomic BrauerLift::operator()(gfla::Fq x) const {
    if (x == 0) fail(Errc::InvalidArgument, "zero has no Brauer lift");
    return Cyclotomic::zeta(f_->q() - 1, f_->log(x));
}

Cyclotomic brauer_char_value(const gfla::FqMatrix& m) {
    if (!m.square()) fail(Errc::NotSquare, "brauer_char_value");
    const std::size_t n = m.rows();
    if (n == 0) return Cyclotomic(0);
    const gfla::Field& F = m.F();
    const std::uint32_t p = F.p();
    auto mp = gfla::min_poly(m);
    if (mp.coeff(0) == 0) fail(Errc::PRegularViolation, "singular matrix");
    // multiplicative order of x modulo the minimal polynomial
    auto x = gfla::FqPolynomial::x(m.field());
    auto one = gfla::FqPolynomial::constant(m.field(), 1);
    auto cur = x % mp;
    std::uint64_t o = 1;
    while (cur != one) {
        cur = (cur * x) % mp;
        if (++o > (1u << 24)) fail(Errc::TooLarge, "element order too large");
    }
    if (o % p == 0) fail(Errc::PRegularViolation, "element order " + std::to_string(o) + " divisible by " + std::to_string(p));
    std::uint32_t K = F.k();
    std::uint64_t qK = F.q();
    while ((qK - 1) % o) {
        K += F.k();
        qK = 1;
        for (std::uint32_t i = 0; i < K; ++i) qK *= p;
        if (qK > gfla::kMaxFieldOrder) fail(Errc::FieldTooLarge, "eigenvalues of order " + std::to_string(o) + " need GF(" + std::to_string(p) + "^" + std::to_string(K) + ")");
    }
    auto E = gfla::field_make(p, K);
    auto cp = gfla::char_poly(m);
    std::vector<gfla::Fq> c;
    for (int i = 0; i <= cp.degree(); ++i) c.push_back(gfla::embed(F, *E, cp.coeff(std::size_t(i))));
    std::vector<Rational> ex(o, 0);
    std::size_t found = 0;
    for (std::uint64_t j = 0; j < o; ++j) {
        gfla::Fq r = E->exp(j * ((qK - 1) / o));
        // synthetic division while r is a root
        for (;;) {
            std::vector<gfla::Fq> q(c.size() > 1 ? c.size() - 1 : 0);
            gfla::Fq acc = 0;
            for (std::size_t i = c.size(); i-- > 0;) {
                acc = E->add(E->mul(acc, r), c[i]);
                if (i > 0) q[i - 1] = acc;
            }
            if (acc != 0 || c.size() < 2) break;
            c = std::move(q);
            ex[j] += 1;
            ++found;
        }
    }
    if (found != n) fail(Errc::PRegularViolation, "characteristic polynomial does not split into roots of unity");
    return Cyclotomic::from_exponents(o, ex);
}

Cyclotomic brauer_char_value(const rep::Representation& r, const std::vector<std::uint32_t>& word) {
    gfla::FqMatrix m = gfla::FqMatrix::identity(r.field, r.dim);
    for (auto k : word) {
        if (k >= r.ngens()) fail(Errc::GeneratorCountMismatch, "word letter out of range");
        m = m * r.gens[k];
    }
    return brauer_char_value(m);
}

}  // namespace modat::cyclo
