#include "covlab/ffield.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>

namespace covlab {

namespace {

// --- dense univariate polynomials over F_p (coefficient index = degree) ---

using UPoly = std::vector<std::int64_t>;

void utrim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int udeg(const UPoly& f) { return static_cast<int>(f.size()) - 1; } // -1 for zero

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        std::int64_t tmp = t - quot * new_t;
        t = new_t; new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r; new_r = tmp;
    }
    if (r != 1) throw ValidationError("element has no inverse mod " + std::to_string(p));
    return ((t % p) + p) % p;
}

UPoly umul(const UPoly& f, const UPoly& g, std::int64_t p) {
    if (f.empty() || g.empty()) return {};
    UPoly out(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j)
            out[i + j] = (out[i + j] + f[i] * g[j]) % p;
    }
    utrim(out);
    return out;
}

// Remainder of f by monic g.
UPoly urem(UPoly f, const UPoly& g, std::int64_t p) {
    utrim(f);
    const int dg = udeg(g);
    while (udeg(f) >= dg) {
        std::int64_t lead = f.back();
        int shift = udeg(f) - dg;
        for (int i = 0; i <= dg; ++i) {
            std::int64_t& c = f[i + shift];
            c = ((c - lead * g[i]) % p + p) % p;
        }
        utrim(f);
    }
    return f;
}

UPoly ugcd(UPoly a, UPoly b, std::int64_t p) {
    utrim(a); utrim(b);
    while (!b.empty()) {
        // make b monic so urem applies
        std::int64_t inv_lead = mod_inverse(b.back(), p);
        for (auto& c : b) c = c * inv_lead % p;
        UPoly r = urem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

UPoly upow_mod(UPoly base, std::uint64_t e, const UPoly& mod, std::int64_t p) {
    UPoly result{1};
    base = urem(std::move(base), mod, p);
    while (e > 0) {
        if (e & 1) result = urem(umul(result, base, p), mod, p);
        base = urem(umul(base, base, p), mod, p);
        e >>= 1;
    }
    return result;
}

// x^(p^j) mod f via j successive p-th powers.
UPoly frobenius_power(const UPoly& f, int j, std::int64_t p) {
    UPoly h{0, 1}; // x
    for (int i = 0; i < j; ++i)
        h = upow_mod(h, static_cast<std::uint64_t>(p), f, p);
    return h;
}

// Next monic polynomial of fixed degree in lexicographic coefficient order
// (constant coefficient most significant). Returns false on wraparound.
bool next_monic(UPoly& f, std::int64_t p) {
    for (int i = static_cast<int>(f.size()) - 2; i >= 0; --i) {
        if (++f[i] < p) return true;
        f[i] = 0;
    }
    return false;
}

bool divides(const UPoly& d, const UPoly& f, std::int64_t p) {
    return urem(f, d, p).empty();
}

// Monic f of degree k >= 1. Trial division for k <= 4, Rabin's pattern above.
bool is_irreducible(const UPoly& f, std::int64_t p) {
    const int k = udeg(f);
    if (k == 1) return true;
    if (f[0] == 0) return false; // divisible by x
    if (k <= 4) {
        for (int dd = 1; dd <= k / 2; ++dd) {
            UPoly d(dd + 1, 0);
            d[dd] = 1;
            do {
                if (divides(d, f, p)) return false;
            } while (next_monic(d, p));
        }
        return true;
    }
    // x^(p^k) == x mod f
    UPoly h = frobenius_power(f, k, p);
    UPoly x{0, 1};
    if (h != x) return false;
    // gcd(x^(p^(k/t)) - x, f) == 1 for every prime t | k
    int rest = k;
    for (int t = 2; rest > 1; ++t) {
        if (t * t > rest) t = rest; // what is left is prime
        if (rest % t != 0) continue;
        while (rest % t == 0) rest /= t;
        UPoly g = frobenius_power(f, k / t, p);
        // g - x mod f
        if (g.size() < 2) g.resize(2, 0);
        g[1] = ((g[1] - 1) % p + p) % p;
        utrim(g);
        UPoly gc = ugcd(f, g, p);
        if (udeg(gc) != 0) return false;
    }
    return true;
}

std::uint64_t make_tag(std::int64_t p, int k) {
    return (static_cast<std::uint64_t>(p) << 8) | static_cast<std::uint64_t>(k & 0xff);
}

} // namespace

// --- FieldSpec ---

struct FieldSpec::Data {
    std::int64_t p = 0;
    int k = 1;
    std::int64_t q = 0;
    std::vector<std::int64_t> modulus; // k+1 coefficients, monic; empty when k == 1
    std::uint64_t tag = 0;
};

std::int64_t FieldSpec::p() const { return d_->p; }
int FieldSpec::k() const { return d_->k; }
std::int64_t FieldSpec::q() const { return d_->q; }
const std::vector<std::int64_t>& FieldSpec::modulus() const { return d_->modulus; }
std::uint64_t FieldSpec::tag() const { return d_->tag; }

bool FieldSpec::operator==(const FieldSpec& o) const {
    if (d_ == o.d_) return true;
    if (!d_ || !o.d_) return false;
    return d_->p == o.d_->p && d_->k == o.d_->k && d_->modulus == o.d_->modulus;
}

void FieldSpec::check(const Element& a) const {
    if (a.tag != d_->tag || static_cast<int>(a.coeffs.size()) != d_->k)
        throw ValidationError("element does not belong to " + to_string());
}

Element FieldSpec::zero() const {
    return Element{std::vector<std::int64_t>(d_->k, 0), d_->tag};
}

Element FieldSpec::one() const {
    Element e = zero();
    e.coeffs[0] = 1 % d_->p;
    return e;
}

Element FieldSpec::from_int(std::int64_t n) const {
    Element e = zero();
    e.coeffs[0] = ((n % d_->p) + d_->p) % d_->p;
    return e;
}

Element FieldSpec::make_element(std::vector<std::int64_t> coeffs) const {
    if (static_cast<int>(coeffs.size()) != d_->k)
        throw ValidationError("element needs exactly " + std::to_string(d_->k) +
                              " coefficients in " + to_string());
    for (auto& c : coeffs) c = ((c % d_->p) + d_->p) % d_->p;
    return Element{std::move(coeffs), d_->tag};
}

Element FieldSpec::generator() const {
    if (d_->k < 2) throw ValidationError("prime field has no extension generator");
    Element e = zero();
    e.coeffs[1] = 1;
    return e;
}

bool FieldSpec::is_zero(const Element& a) const {
    check(a);
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](std::int64_t c) { return c == 0; });
}

Element FieldSpec::add(const Element& a, const Element& b) const {
    check(a); check(b);
    Element out = a;
    for (int i = 0; i < d_->k; ++i) out.coeffs[i] = (out.coeffs[i] + b.coeffs[i]) % d_->p;
    return out;
}

Element FieldSpec::sub(const Element& a, const Element& b) const {
    check(a); check(b);
    Element out = a;
    for (int i = 0; i < d_->k; ++i)
        out.coeffs[i] = ((out.coeffs[i] - b.coeffs[i]) % d_->p + d_->p) % d_->p;
    return out;
}

Element FieldSpec::neg(const Element& a) const {
    return sub(zero(), a);
}

Element FieldSpec::mul(const Element& a, const Element& b) const {
    check(a); check(b);
    if (d_->k == 1)
        return Element{{a.coeffs[0] * b.coeffs[0] % d_->p}, d_->tag};
    UPoly prod = umul(a.coeffs, b.coeffs, d_->p);
    UPoly red = urem(std::move(prod), d_->modulus, d_->p);
    red.resize(d_->k, 0);
    return Element{std::move(red), d_->tag};
}

Element FieldSpec::inv(const Element& a) const {
    check(a);
    if (is_zero(a)) throw ValidationError("division by zero in " + to_string());
    if (d_->k == 1)
        return Element{{mod_inverse(a.coeffs[0], d_->p)}, d_->tag};
    // extended Euclid on (a, modulus) over F_p[x]
    UPoly r0 = d_->modulus, r1 = a.coeffs;
    utrim(r1);
    UPoly t0{}, t1{1};
    while (!r1.empty()) {
        // divide r0 by r1: make r1 monic, track quotient
        std::int64_t lead_inv = mod_inverse(r1.back(), d_->p);
        UPoly quot;
        UPoly rem = r0;
        utrim(rem);
        while (udeg(rem) >= udeg(r1)) {
            int shift = udeg(rem) - udeg(r1);
            std::int64_t coef = rem.back() * lead_inv % d_->p;
            if (static_cast<int>(quot.size()) <= shift) quot.resize(shift + 1, 0);
            quot[shift] = (quot[shift] + coef) % d_->p;
            for (int i = 0; i <= udeg(r1); ++i) {
                std::int64_t& c = rem[i + shift];
                c = ((c - coef * r1[i]) % d_->p + d_->p) % d_->p;
            }
            utrim(rem);
        }
        UPoly t2 = t0;
        UPoly qt = umul(quot, t1, d_->p);
        if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
        for (std::size_t i = 0; i < qt.size(); ++i)
            t2[i] = ((t2[i] - qt[i]) % d_->p + d_->p) % d_->p;
        utrim(t2);
        t0 = std::move(t1);
        t1 = std::move(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
    }
    // r0 is the gcd, a nonzero constant for a unit
    std::int64_t scale = mod_inverse(r0[0], d_->p);
    for (auto& c : t0) c = c * scale % d_->p;
    t0.resize(d_->k, 0);
    return Element{std::move(t0), d_->tag};
}

Element FieldSpec::div(const Element& a, const Element& b) const {
    return mul(a, inv(b));
}

Element FieldSpec::pow(const Element& a, std::uint64_t e) const {
    check(a);
    Element result = one();
    Element base = a;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Element FieldSpec::frobenius(const Element& a) const {
    return pow(a, static_cast<std::uint64_t>(d_->p));
}

std::vector<Element> FieldSpec::enumerate(Budget budget) const {
    budget.require(d_->q);
    std::vector<Element> out;
    out.reserve(static_cast<std::size_t>(d_->q));
    Element cur = zero();
    while (true) {
        out.push_back(cur);
        int i = d_->k - 1;
        for (; i >= 0; --i) {
            if (++cur.coeffs[i] < d_->p) break;
            cur.coeffs[i] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

std::string FieldSpec::to_string() const {
    if (d_->k == 1) return "GF(" + std::to_string(d_->p) + ")";
    return "GF(" + std::to_string(d_->p) + "^" + std::to_string(d_->k) + ")";
}

std::string FieldSpec::element_to_string(const Element& a) const {
    check(a);
    std::string s = "[";
    for (int i = 0; i < d_->k; ++i) {
        if (i) s += ",";
        s += std::to_string(a.coeffs[i]);
    }
    return s + "]";
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec make_field(std::int64_t p, int k, Budget budget) {
    if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
    if (p > (std::int64_t{1} << 31)) throw ValidationError("characteristic exceeds the supported word size");
    if (k < 1) throw ValidationError("extension degree must be at least 1");
    std::int64_t q = saturating_pow(p, k, budget.limit);
    budget.require(q);

    auto d = std::make_shared<FieldSpec::Data>();
    d->p = p;
    d->k = k;
    d->q = q;
    d->tag = make_tag(p, k);
    if (k >= 2) {
        // scan monic degree-k polynomials in ascending lexicographic
        // coefficient order; the first irreducible wins
        UPoly f(k + 1, 0);
        f[k] = 1;
        do {
            if (is_irreducible(f, p)) {
                d->modulus = f;
                break;
            }
        } while (next_monic(f, p));
        if (d->modulus.empty())
            throw Error("internal: no irreducible modulus found"); // cannot happen
    }
    return FieldSpec(std::move(d));
}

FieldSpec make_field_with_modulus(std::int64_t p, int k, const std::vector<std::int64_t>& modulus) {
    if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
    if (k < 2) throw ValidationError("explicit modulus requires extension degree >= 2");
    if (static_cast<int>(modulus.size()) != k + 1 || modulus.back() != 1)
        throw ValidationError("modulus must be monic of degree exactly " + std::to_string(k));
    for (auto c : modulus)
        if (c < 0 || c >= p) throw ValidationError("modulus coefficients must lie in [0, p)");
    UPoly f = modulus;
    if (!is_irreducible(f, p)) {
        std::string text;
        for (std::size_t i = 0; i < modulus.size(); ++i) {
            if (i) text += ",";
            text += std::to_string(modulus[i]);
        }
        throw ValidationError("modulus [" + text + "] is reducible over GF(" + std::to_string(p) + ")");
    }
    auto d = std::make_shared<FieldSpec::Data>();
    d->p = p;
    d->k = k;
    d->q = saturating_pow(p, k, std::numeric_limits<std::int64_t>::max() / 2);
    d->tag = make_tag(p, k);
    d->modulus = modulus;
    return FieldSpec(std::move(d));
}

Element arith(const FieldSpec& spec, const Element& a, const Element& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return spec.add(a, b);
        case ArithOp::Sub: return spec.sub(a, b);
        case ArithOp::Mul: return spec.mul(a, b);
        case ArithOp::Div: return spec.div(a, b);
    }
    throw Error("internal: bad ArithOp");
}

Element frobenius(const Element& a, const FieldSpec& spec) {
    return spec.frobenius(a);
}

// --- FieldEmbedding / extend_field ---

FieldEmbedding::FieldEmbedding(FieldSpec from, FieldSpec to, Element generator_image)
    : from_(std::move(from)), to_(std::move(to)), gen_image_(std::move(generator_image)) {
    gen_powers_.reserve(from_.k());
    Element pw = to_.one();
    for (int i = 0; i < from_.k(); ++i) {
        gen_powers_.push_back(pw);
        if (i + 1 < from_.k()) pw = to_.mul(pw, gen_image_);
    }
}

Element FieldEmbedding::map(const Element& a) const {
    if (from_.k() == 1) return to_.from_int(a.coeffs.at(0));
    Element acc = to_.zero();
    for (int i = 0; i < from_.k(); ++i)
        acc = to_.add(acc, to_.mul(to_.from_int(a.coeffs[i]), gen_powers_[i]));
    return acc;
}

FieldExtension extend_field(const FieldSpec& spec, int m, Budget budget) {
    if (m < 1) throw ValidationError("extension degree must be at least 1");
    if (m == 1) {
        Element gen_img = spec.k() >= 2 ? spec.generator() : spec.zero();
        return FieldExtension{spec, FieldEmbedding(spec, spec, gen_img)};
    }
    FieldSpec ext = make_field(spec.p(), spec.k() * m, budget);
    if (spec.k() == 1)
        return FieldExtension{ext, FieldEmbedding(spec, ext, ext.zero())};

    // find the first root of the old modulus in the new field
    budget.require(ext.q());
    const auto& mod = spec.modulus();
    Element cur = ext.zero();
    while (true) {
        // Horner evaluation of the monic modulus at cur
        Element val = ext.one();
        for (int i = spec.k() - 1; i >= 0; --i)
            val = ext.add(ext.mul(val, cur), ext.from_int(mod[i]));
        if (ext.is_zero(val))
            return FieldExtension{ext, FieldEmbedding(spec, ext, cur)};
        int i = ext.k() - 1;
        for (; i >= 0; --i) {
            if (++cur.coeffs[i] < ext.p()) break;
            cur.coeffs[i] = 0;
        }
        if (i < 0) break;
    }
    throw Error("internal: modulus has no root in the extension"); // cannot happen
}

FieldSpec parse_gf_literal(const std::string& text, Budget budget) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 5 || s.substr(0, 3) != "GF(" || s.back() != ')')
        throw ParseError("expected field literal GF(p) or GF(p^k), got '" + text + "'");
    std::string body = s.substr(3, s.size() - 4);
    std::int64_t p = 0;
    int k = 1;
    auto caret = body.find('^');
    try {
        if (caret == std::string::npos) {
            p = std::stoll(body);
        } else {
            p = std::stoll(body.substr(0, caret));
            k = std::stoi(body.substr(caret + 1));
        }
    } catch (const std::exception&) {
        throw ParseError("malformed field literal '" + text + "'");
    }
    return make_field(p, k, budget);
}

} // namespace covlab
