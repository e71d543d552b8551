#include "covlab/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace covlab {

Multinomial::Multinomial(int nvars, FieldSpec spec) : nvars_(nvars), spec_(std::move(spec)) {
    if (nvars < 0) throw ValidationError("negative variable count");
}

Multinomial Multinomial::constant(const Element& c, int nvars, const FieldSpec& spec) {
    Multinomial f(nvars, spec);
    f.add_term(std::vector<int>(nvars, 0), c);
    return f;
}

Multinomial Multinomial::variable(int j, int nvars, const FieldSpec& spec) {
    if (j < 0 || j >= nvars)
        throw ValidationError("variable x" + std::to_string(j) + " out of range for " +
                              std::to_string(nvars) + " variables");
    Multinomial f(nvars, spec);
    std::vector<int> e(nvars, 0);
    e[j] = 1;
    f.add_term(e, spec.one());
    return f;
}

std::optional<int> Multinomial::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    const auto& exps = terms_.rbegin()->first; // graded order: last term has max degree
    return std::accumulate(exps.begin(), exps.end(), 0);
}

bool Multinomial::is_constant() const {
    auto d = total_degree();
    return !d.has_value() || *d == 0;
}

bool Multinomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    auto first = std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0);
    for (const auto& [e, c] : terms_) {
        if (std::accumulate(e.begin(), e.end(), 0) != first) return false;
    }
    return true;
}

void Multinomial::add_term(const std::vector<int>& exps, const Element& coeff) {
    if (static_cast<int>(exps.size()) != nvars_)
        throw ValidationError("exponent vector length mismatch");
    for (int e : exps)
        if (e < 0) throw ValidationError("negative exponent");
    if (spec_.is_zero(coeff)) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, coeff);
    } else {
        Element s = spec_.add(it->second, coeff);
        if (spec_.is_zero(s))
            terms_.erase(it);
        else
            it->second = std::move(s);
    }
}

namespace {
void require_compatible(const Multinomial& a, const Multinomial& b) {
    if (a.nvars() != b.nvars() || a.field() != b.field())
        throw ValidationError("polynomials live in different rings");
}
} // namespace

Multinomial Multinomial::operator+(const Multinomial& o) const {
    require_compatible(*this, o);
    Multinomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

Multinomial Multinomial::operator-(const Multinomial& o) const {
    require_compatible(*this, o);
    Multinomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, spec_.neg(c));
    return out;
}

Multinomial Multinomial::negated() const {
    Multinomial out(nvars_, spec_);
    for (const auto& [e, c] : terms_) out.add_term(e, spec_.neg(c));
    return out;
}

Multinomial Multinomial::operator*(const Multinomial& o) const {
    require_compatible(*this, o);
    Multinomial out(nvars_, spec_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            std::vector<int> e(nvars_);
            for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, spec_.mul(ca, cb));
        }
    }
    return out;
}

Multinomial Multinomial::pow(int e) const {
    if (e < 0) throw ValidationError("negative polynomial power");
    Multinomial result = Multinomial::constant(spec_.one(), nvars_, spec_);
    Multinomial base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        if (e >>= 1) base = base * base;
    }
    return result;
}

Element Multinomial::evaluate(const std::vector<Element>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
        throw ValidationError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                              std::to_string(nvars_));
    Element acc = spec_.zero();
    for (const auto& [e, c] : terms_) {
        Element term = c;
        for (int j = 0; j < nvars_; ++j) {
            if (e[j] == 0) continue;
            term = spec_.mul(term, spec_.pow(point[j], static_cast<std::uint64_t>(e[j])));
        }
        acc = spec_.add(acc, term);
    }
    return acc;
}

Multinomial Multinomial::partial(int j) const {
    if (j < 0 || j >= nvars_)
        throw ValidationError("partial derivative index out of range");
    Multinomial out(nvars_, spec_);
    for (const auto& [e, c] : terms_) {
        if (e[j] == 0) continue;
        Element factor = spec_.from_int(e[j]); // vanishes when p divides e[j]
        if (spec_.is_zero(factor)) continue;
        std::vector<int> ne = e;
        --ne[j];
        out.add_term(ne, spec_.mul(c, factor));
    }
    return out;
}

Multinomial Multinomial::homogenize(int d) const {
    auto deg = total_degree();
    if (deg.has_value() && *deg > d)
        throw ValidationError("homogenization degree below total degree");
    Multinomial out(nvars_ + 1, spec_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne = e;
        int sum = std::accumulate(e.begin(), e.end(), 0);
        ne.push_back(d - sum);
        out.add_term(ne, c);
    }
    return out;
}

Multinomial Multinomial::dehomogenize(int chart) const {
    if (chart < 0 || chart >= nvars_)
        throw ValidationError("chart index out of range");
    Multinomial out(nvars_ - 1, spec_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne;
        ne.reserve(nvars_ - 1);
        for (int j = 0; j < nvars_; ++j)
            if (j != chart) ne.push_back(e[j]);
        out.add_term(ne, c);
    }
    return out;
}

Multinomial Multinomial::pad_vars(int new_nvars) const {
    if (new_nvars < nvars_) throw ValidationError("pad_vars cannot shrink the ring");
    Multinomial out(new_nvars, spec_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> ne = e;
        ne.resize(new_nvars, 0);
        out.add_term(ne, c);
    }
    return out;
}

Multinomial Multinomial::base_change(const FieldEmbedding& emb) const {
    if (emb.from() != spec_) throw ValidationError("embedding does not start at this field");
    Multinomial out(nvars_, emb.to());
    for (const auto& [e, c] : terms_) out.add_term(e, emb.map(c));
    return out;
}

std::string Multinomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!s.empty()) s += " + ";
        bool constant_term = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        bool coeff_is_one = (c == spec_.one());
        std::string mono;
        for (int j = 0; j < nvars_; ++j) {
            if (e[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(j);
            if (e[j] > 1) mono += "^" + std::to_string(e[j]);
        }
        std::string coeff;
        if (spec_.k() == 1)
            coeff = std::to_string(c.coeffs[0]);
        else
            coeff = spec_.element_to_string(c);
        if (constant_term)
            s += coeff;
        else if (coeff_is_one)
            s += mono;
        else
            s += coeff + "*" + mono;
    }
    return s;
}

// --- parser ---

namespace {

class PolyParser {
public:
    PolyParser(const std::string& text, int nvars, const FieldSpec& spec)
        : text_(text), nvars_(nvars), spec_(spec) {}

    Multinomial parse() {
        Multinomial f = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected character '" + std::string(1, text_[pos_]) +
                             "' at offset " + std::to_string(pos_) + " in polynomial expression");
        return f;
    }

private:
    const std::string& text_;
    int nvars_;
    const FieldSpec& spec_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Multinomial parse_expr() {
        Multinomial acc = parse_term();
        while (true) {
            if (eat('+'))
                acc = acc + parse_term();
            else if (eat('-'))
                acc = acc - parse_term();
            else
                return acc;
        }
    }

    Multinomial parse_term() {
        Multinomial acc = parse_factor();
        while (eat('*')) acc = acc * parse_factor();
        return acc;
    }

    Multinomial parse_factor() {
        if (eat('-')) return parse_factor().negated();
        Multinomial base = parse_primary();
        if (eat('^')) {
            std::int64_t e = parse_int_literal();
            if (e < 0) throw ParseError("negative exponent in polynomial expression");
            if (e > 1'000'000) throw ParseError("exponent too large");
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    std::int64_t parse_int_literal() {
        skip_ws();
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected integer at offset " + std::to_string(pos_) +
                             " in polynomial expression");
        std::int64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > (std::int64_t{1} << 50)) throw ParseError("integer literal too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    Multinomial parse_primary() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Multinomial inner = parse_expr();
            if (!eat(')')) throw ParseError("missing ')' in polynomial expression");
            return inner;
        }
        if (c == '[') return parse_element_literal();
        if (c == 'x') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("variable name must be x<index>");
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            int idx = std::stoi(text_.substr(start, pos_ - start));
            if (idx >= nvars_)
                throw ParseError("unknown variable x" + std::to_string(idx) + ": expression has " +
                                 std::to_string(nvars_) + " variables");
            return Multinomial::variable(idx, nvars_, spec_);
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Multinomial::constant(spec_.from_int(parse_int_literal()), nvars_, spec_);
        throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " +
                         std::to_string(pos_) + " in polynomial expression");
    }

    Multinomial parse_element_literal() {
        eat('[');
        std::vector<std::int64_t> coeffs;
        while (true) {
            coeffs.push_back(parse_int_literal());
            if (eat(']')) break;
            if (!eat(',')) throw ParseError("malformed element literal");
        }
        if (static_cast<int>(coeffs.size()) != spec_.k())
            throw ParseError("element literal has " + std::to_string(coeffs.size()) +
                             " coefficients, field needs " + std::to_string(spec_.k()));
        return Multinomial::constant(spec_.make_element(coeffs), nvars_, spec_);
    }
};

} // namespace

Multinomial parse_poly(const std::string& text, int nvars, const FieldSpec& spec) {
    return PolyParser(text, nvars, spec).parse();
}

Multinomial formal_partial(const Multinomial& f, int j) {
    return f.partial(j);
}

MatrixF JacobianMatrix::evaluate_at(const std::vector<Element>& point, const FieldSpec& spec) const {
    MatrixF m;
    m.spec = spec;
    m.rows.reserve(rows);
    for (int i = 0; i < rows; ++i) {
        std::vector<Element> row;
        row.reserve(cols);
        for (int j = 0; j < cols; ++j) row.push_back(entries[i][j].evaluate(point));
        m.rows.push_back(std::move(row));
    }
    return m;
}

JacobianMatrix jacobian(const std::vector<Multinomial>& fs) {
    JacobianMatrix jm;
    if (fs.empty()) return jm;
    const int nvars = fs.front().nvars();
    const FieldSpec& spec = fs.front().field();
    for (const auto& f : fs)
        if (f.nvars() != nvars || f.field() != spec)
            throw ValidationError("jacobian over mixed polynomial rings");
    jm.rows = static_cast<int>(fs.size());
    jm.cols = nvars;
    jm.entries.reserve(jm.rows);
    for (const auto& f : fs) {
        std::vector<Multinomial> row;
        row.reserve(nvars);
        for (int j = 0; j < nvars; ++j) row.push_back(f.partial(j));
        jm.entries.push_back(std::move(row));
    }
    return jm;
}

} // namespace covlab
