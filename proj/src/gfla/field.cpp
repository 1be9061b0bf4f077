#include "modat/gfla/field.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "modat/error.hpp"

namespace modat::gfla {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// dense polynomials over GF(p), low-to-high, used only for the Conway search
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a*b mod f, f monic of degree k
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) t[i + j] += std::uint64_t(a[i]) * b[j];
    }
    for (auto& v : t) v %= p;
    std::size_t k = f.size() - 1;
    for (std::size_t i = t.size(); i-- > k;) {
        std::uint64_t c = t[i];
        if (!c) continue;
        for (std::size_t j = 0; j <= k; ++j) t[i - k + j] = (t[i - k + j] + (p - c) * f[j]) % p;
    }
    Poly r(std::min(t.size(), k));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::uint32_t(t[i]);
    trim(r);
    return r;
}

Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = mulmod(r, base, f, p);
        e >>= 1;
        if (e) base = mulmod(base, base, f, p);
    }
    return r;
}

bool is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }

bool primitive(const Poly& f, std::uint32_t p, std::uint32_t k) {
    std::uint64_t n = ipow(p, k) - 1;
    Poly x = k == 1 ? Poly{std::uint32_t((p - f[0]) % p)} : Poly{0, 1};
    trim(x);
    if (x.empty()) return false;
    if (!is_one(powmod(x, n, f, p))) return false;
    for (auto r : prime_divisors(n))
        if (is_one(powmod(x, n / r, f, p))) return false;
    return true;
}

bool compatible(const Poly& f, std::uint32_t p, std::uint32_t k) {
    std::uint64_t n = ipow(p, k) - 1;
    for (std::uint32_t d = 1; d < k; ++d) {
        if (k % d) continue;
        Poly sub = conway_polynomial(p, d);
        Poly y = powmod(Poly{0, 1}, n / (ipow(p, d) - 1), f, p);
        Poly acc;  // Horner
        for (std::size_t i = sub.size(); i-- > 0;) {
            acc = mulmod(acc, y, f, p);
            if (acc.empty()) acc = Poly{0};
            acc[0] = (acc[0] + sub[i]) % p;
            trim(acc);
        }
        if (!acc.empty()) return false;
    }
    return true;
}

Poly search_conway(std::uint32_t p, std::uint32_t k) {
    // a_{k-1} .. a_0 counted lexicographically; f_i = (-1)^(k-i) a_i
    std::vector<std::uint32_t> a(k, 0);
    for (;;) {
        // increment, least significant is a_0
        std::size_t i = 0;
        while (i < k && a[i] == p - 1) a[i++] = 0;
        if (i == k) break;
        ++a[i];
        if (a[0] == 0) continue;
        Poly f(k + 1);
        f[k] = 1;
        for (std::uint32_t j = 0; j < k; ++j) f[j] = ((k - j) % 2 == 0) ? a[j] : (p - a[j]) % p;
        if (primitive(f, p, k) && compatible(f, p, k)) return f;
    }
    fail(Errc::InvalidArgument, "no Conway polynomial found");
}

struct ConwayCache {
    std::recursive_mutex mu;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Poly> memo;
    std::string path;
    bool loaded = false;

    void load() {
        if (loaded) return;
        loaded = true;
        if (path.empty()) {
            if (const char* env = std::getenv("MODAT_CONWAY_CACHE")) path = env;
        }
        if (path.empty()) return;
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ss(line);
            std::uint32_t p, k;
            if (!(ss >> p >> k)) continue;
            Poly f(k + 1);
            bool ok = true;
            for (auto& c : f) ok = ok && bool(ss >> c);
            if (ok && f[k] == 1) memo[{p, k}] = f;
        }
    }

    void persist(std::uint32_t p, std::uint32_t k, const Poly& f) {
        if (path.empty()) return;
        std::ofstream out(path, std::ios::app);
        out << p << ' ' << k;
        for (auto c : f) out << ' ' << c;
        out << '\n';
    }
};

ConwayCache& cache() {
    static ConwayCache c;
    return c;
}

}  // namespace

void set_conway_cache_path(const std::string& path) {
    auto& c = cache();
    std::lock_guard lk(c.mu);
    c.path = path;
    c.loaded = false;
    if (path.empty()) c.loaded = true;
}

std::vector<std::uint32_t> conway_polynomial(std::uint32_t p, std::uint32_t k) {
    auto& c = cache();
    std::lock_guard lk(c.mu);
    c.load();
    auto it = c.memo.find({p, k});
    if (it != c.memo.end()) return it->second;
    Poly f = search_conway(p, k);
    c.memo[{p, k}] = f;
    c.persist(p, k, f);
    return f;
}

std::uint32_t order_mod(std::uint32_t p, std::uint64_t n) {
    if (n == 0 || n % p == 0) return 0;
    if (n == 1) return 1;
    std::uint64_t r = p % n;
    std::uint32_t m = 1;
    while (r != 1) {
        r = r * p % n;
        ++m;
    }
    return m;
}

Field::Field(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> conway)
    : p_(p), k_(k), q_(std::uint32_t(ipow(p, k))), conway_(std::move(conway)) {
    gen_ = k_ == 1 ? (p_ - conway_[0]) % p_ : p_;
    if (q_ == 2) gen_ = 1;
    const std::uint32_t n = q_ - 1;
    exp_.resize(n);
    log_.assign(q_, 0);
    Fq x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = std::uint16_t(x);
        log_[x] = std::uint16_t(i);
        x = poly_mul(x, gen_);
    }
    neg_.resize(q_);
    for (Fq a = 0; a < q_; ++a) {
        auto d = digits(a);
        for (auto& v : d) v = (p_ - v) % p_;
        neg_[a] = std::uint16_t(from_digits(d));
    }
    zech_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        Fq s = poly_add(1, exp_[i]);
        zech_[i] = s == 0 ? 0xFFFF : log_[s];
    }
    if (q_ <= 256) {
        add_tab_.assign(256 * 256, 0);
        mul_tab_.assign(256 * 256, 0);
        for (Fq a = 0; a < q_; ++a)
            for (Fq b = 0; b < q_; ++b) {
                add_tab_[(a << 8) | b] = std::uint8_t(zech_add(a, b));
                mul_tab_[(a << 8) | b] = std::uint8_t(zech_mul(a, b));
            }
    }
}

std::string Field::name() const { return "GF(" + std::to_string(q_) + ")"; }

std::vector<std::uint32_t> Field::digits(Fq a) const {
    std::vector<std::uint32_t> d(k_);
    for (auto& v : d) {
        v = a % p_;
        a /= p_;
    }
    return d;
}

Fq Field::from_digits(const std::vector<std::uint32_t>& d) const {
    Fq a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
    return a;
}

Fq Field::poly_add(Fq a, Fq b) const noexcept {
    Fq r = 0, m = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
        r += ((a % p_ + b % p_) % p_) * m;
        a /= p_;
        b /= p_;
        m *= p_;
    }
    return r;
}

Fq Field::poly_mul(Fq a, Fq b) const noexcept {
    std::uint32_t da[16], db[16], t[32] = {};
    for (std::uint32_t i = 0; i < k_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    for (std::uint32_t i = 0; i < k_; ++i)
        for (std::uint32_t j = 0; j < k_; ++j) t[i + j] = (t[i + j] + da[i] * db[j]) % p_;
    for (std::uint32_t i = 2 * k_ - 1; i-- > k_;) {
        std::uint32_t c = t[i];
        if (!c) continue;
        for (std::uint32_t j = 0; j <= k_; ++j) t[i - k_ + j] = (t[i - k_ + j] + (p_ - c) * conway_[j]) % p_;
    }
    Fq r = 0;
    for (std::uint32_t i = k_; i-- > 0;) r = r * p_ + t[i];
    return r;
}

Fq Field::zech_mul(Fq a, Fq b) const noexcept {
    if (!a || !b) return 0;
    std::uint32_t s = std::uint32_t(log_[a]) + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

Fq Field::zech_add(Fq a, Fq b) const noexcept {
    if (!a) return b;
    if (!b) return a;
    const std::uint32_t n = q_ - 1;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t d = lb >= la ? lb - la : lb + n - la;
    std::uint16_t z = zech_[d];
    if (z == 0xFFFF) return 0;
    std::uint32_t s = la + z;
    if (s >= n) s -= n;
    return exp_[s];
}

Fq Field::inv(Fq a) const {
    if (!a) fail(Errc::InvalidArgument, "inverse of zero in " + name());
    std::uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Fq Field::pow(Fq a, std::uint64_t e) const noexcept {
    if (e == 0) return 1;
    if (!a) return 0;
    return exp_[(std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

Fq Field::from_int(std::int64_t n) const noexcept {
    std::int64_t r = n % std::int64_t(p_);
    if (r < 0) r += p_;
    return Fq(r);
}

std::uint32_t Field::order(Fq a) const noexcept {
    std::uint32_t n = q_ - 1;
    std::uint32_t l = log_[a];
    std::uint32_t g = n;
    for (std::uint32_t x = l; x;) {
        std::uint32_t t = g % x;
        g = x;
        x = t;
    }
    return n / g;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t k) { return field_make(p, k); }

FieldPtr field_make(std::uint32_t p, std::uint32_t k) {
    if (!is_prime(p)) fail(Errc::CompositeCharacteristic, std::to_string(p) + " is not prime");
    if (k == 0) fail(Errc::InvalidArgument, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) fail(Errc::FieldTooLarge, std::to_string(p) + "^" + std::to_string(k));
    }
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, FieldPtr> fields;
    {
        std::lock_guard lk(mu);
        auto it = fields.find({p, k});
        if (it != fields.end()) return it->second;
    }
    auto f = std::make_shared<const Field>(p, k, conway_polynomial(p, k));
    std::lock_guard lk(mu);
    return fields.emplace(std::make_pair(p, k), f).first->second;
}

Fq embed(const Field& from, const Field& to, Fq x) {
    if (from.p() != to.p() || to.k() % from.k() != 0) fail(Errc::FieldMismatch, from.name() + " does not embed in " + to.name());
    if (x == 0) return 0;
    std::uint64_t step = (to.q() - 1) / (from.q() - 1);
    return to.exp(std::uint64_t(from.log(x)) * step);
}

}  // namespace modat::gfla
