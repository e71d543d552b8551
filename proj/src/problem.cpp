#include "covlab/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace covlab {

OutputFormat parse_format(const std::string& name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "csv") return OutputFormat::Csv;
    if (name == "structured") return OutputFormat::Structured;
    throw ValidationError("unknown format '" + name + "' (expected table, csv, or structured)");
}

std::string format_to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Table: return "table";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Structured: return "structured";
    }
    return "table";
}

const NamedField* Problem::find_field(const std::string& name) const {
    for (const auto& f : fields)
        if (f.name == name) return &f;
    return nullptr;
}

const NamedVariety* Problem::find_variety(const std::string& name) const {
    for (const auto& v : varieties)
        if (v.name == name) return &v;
    return nullptr;
}

const NamedCover* Problem::find_cover(const std::string& name) const {
    for (const auto& c : covers)
        if (c.name == name) return &c;
    return nullptr;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct KvLine {
    std::string key;
    std::string value;
    int line = 0;
};

struct Stanza {
    std::string kind;
    std::string name;
    int line = 0;
    std::vector<KvLine> entries;

    const KvLine* find(const std::string& key) const {
        for (const auto& e : entries)
            if (e.key == key) return &e;
        return nullptr;
    }

    std::string required(const std::string& key) const {
        const KvLine* e = find(key);
        if (!e)
            throw ParseError("stanza [" + kind + " " + name + "] is missing '" + key + "'", line);
        return e->value;
    }

    std::string context() const { return "[" + kind + " " + name + "] (line " + std::to_string(line) + ")"; }
};

std::vector<Stanza> split_stanzas(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool header_seen = false;
    std::vector<Stanza> stanzas;

    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "covlab-format 1")
                throw ParseError("expected header 'covlab-format 1'", lineno);
            header_seen = true;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated stanza head", lineno);
            std::string head = trim(line.substr(1, line.size() - 2));
            auto space = head.find_first_of(" \t");
            if (space == std::string::npos)
                throw ParseError("stanza head needs a kind and a name", lineno);
            Stanza s;
            s.kind = trim(head.substr(0, space));
            s.name = trim(head.substr(space + 1));
            s.line = lineno;
            if (s.kind != "field" && s.kind != "variety" && s.kind != "cover")
                throw ParseError("unknown stanza kind '" + s.kind + "'", lineno);
            if (s.name.empty()) throw ParseError("empty stanza name", lineno);
            stanzas.push_back(std::move(s));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value' or a stanza head", lineno);
        if (stanzas.empty()) throw ParseError("key outside of any stanza", lineno);
        KvLine kv;
        kv.key = trim(line.substr(0, eq));
        kv.value = trim(line.substr(eq + 1));
        kv.line = lineno;
        if (kv.key.empty()) throw ParseError("empty key", lineno);
        stanzas.back().entries.push_back(std::move(kv));
    }
    if (!header_seen) throw ParseError("empty input: expected header 'covlab-format 1'", 1);
    return stanzas;
}

std::int64_t parse_int(const std::string& text, int line, const std::string& what) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError("malformed " + what + " '" + text + "'", line);
    }
}

Ambient parse_ambient(const std::string& text, int line) {
    auto space = text.find_first_of(" \t");
    if (space == std::string::npos)
        throw ParseError("ambient must be 'affine N' or 'projective N'", line);
    std::string kind = trim(text.substr(0, space));
    std::int64_t n = parse_int(trim(text.substr(space + 1)), line, "ambient dimension");
    if (n < 0 || n > 64) throw ParseError("ambient dimension out of range", line);
    if (kind == "affine") return Ambient{AmbientKind::Affine, static_cast<int>(n)};
    if (kind == "projective") return Ambient{AmbientKind::Projective, static_cast<int>(n)};
    throw ParseError("ambient must be 'affine N' or 'projective N'", line);
}

TypeDescriptor parse_type(const std::string& text, int line) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError("type descriptor must look like (N, r, d)", line);
    std::istringstream in(s.substr(1, s.size() - 2));
    std::string part;
    std::vector<std::int64_t> vals;
    while (std::getline(in, part, ',')) vals.push_back(parse_int(trim(part), line, "type entry"));
    if (vals.size() != 3) throw ParseError("type descriptor must have three entries", line);
    return TypeDescriptor{vals[0], vals[1], vals[2]};
}

// "[expr, expr, ...]" split on commas outside element literals.
std::vector<std::string> split_map_list(const std::string& text, int line) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("map must be a bracketed list [expr, ...]", line);
    std::string body = s.substr(1, s.size() - 2);
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || parts.empty()) parts.push_back(trim(cur));
    for (const auto& p : parts)
        if (p.empty()) throw ParseError("empty entry in map list", line);
    return parts;
}

// Univariate modulus text "x0^2 + 1" -> coefficient vector [c0, ..., ck].
std::vector<std::int64_t> parse_modulus_coeffs(const std::string& text, const FieldSpec& prime_field,
                                               int line) {
    Multinomial f = [&] {
        try {
            return parse_poly(text, 1, prime_field);
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad modulus: ") + e.what(), line);
        }
    }();
    auto deg = f.total_degree();
    if (!deg.has_value()) throw ParseError("modulus must be nonzero", line);
    std::vector<std::int64_t> coeffs(*deg + 1, 0);
    for (const auto& [e, c] : f.terms()) coeffs[e[0]] = c.coeffs[0];
    return coeffs;
}

FieldSpec build_field(const Stanza& s, Budget budget) {
    std::string literal = s.required("gf");
    FieldSpec default_spec;
    try {
        default_spec = parse_gf_literal(literal, budget);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), s.find("gf")->line);
    }
    const KvLine* mod = s.find("modulus");
    if (!mod) return default_spec;
    FieldSpec prime = make_field(default_spec.p(), 1, budget);
    auto coeffs = parse_modulus_coeffs(mod->value, prime, mod->line);
    try {
        return make_field_with_modulus(default_spec.p(), default_spec.k(), coeffs);
    } catch (const ValidationError& e) {
        throw ValidationError(s.context() + ": " + e.what());
    }
}

} // namespace

Problem load_problem_text(const std::string& text, const RunConfig& cfg) {
    cfg.validate();
    Budget budget = cfg.as_budget();
    std::vector<Stanza> stanzas = split_stanzas(text);

    Problem problem;
    auto check_unique = [&](const std::string& kind, const std::string& name, int line) {
        bool dup = (kind == "field" && problem.find_field(name)) ||
                   (kind == "variety" && problem.find_variety(name)) ||
                   (kind == "cover" && problem.find_cover(name));
        if (dup) throw ParseError("duplicate " + kind + " name '" + name + "'", line);
    };

    for (const auto& s : stanzas) {
        if (s.kind != "field") continue;
        check_unique(s.kind, s.name, s.line);
        problem.fields.push_back(NamedField{s.name, build_field(s, budget), false});
    }

    auto resolve_field = [&](const std::string& ref, int line) -> std::pair<std::string, FieldSpec> {
        if (const NamedField* f = problem.find_field(ref)) return {f->name, f->spec};
        if (ref.rfind("GF(", 0) == 0) {
            FieldSpec spec = parse_gf_literal(ref, budget);
            for (const auto& f : problem.fields)
                if (f.spec == spec) return {f.name, f.spec};
            problem.fields.push_back(NamedField{ref, spec, true});
            return {ref, spec};
        }
        throw ParseError("unknown field '" + ref + "'", line);
    };

    for (const auto& s : stanzas) {
        if (s.kind != "variety") continue;
        check_unique(s.kind, s.name, s.line);
        const KvLine* field_kv = s.find("field");
        if (!field_kv) throw ParseError("stanza [variety " + s.name + "] is missing 'field'", s.line);
        auto [field_name, spec] = resolve_field(field_kv->value, field_kv->line);
        const KvLine* ambient_kv = s.find("ambient");
        if (!ambient_kv)
            throw ParseError("stanza [variety " + s.name + "] is missing 'ambient'", s.line);
        Ambient ambient = parse_ambient(ambient_kv->value, ambient_kv->line);
        const KvLine* dim_kv = s.find("dim");
        if (!dim_kv) throw ParseError("stanza [variety " + s.name + "] is missing 'dim'", s.line);
        std::int64_t dim = parse_int(dim_kv->value, dim_kv->line, "dimension");

        std::vector<Multinomial> equations;
        for (const auto& kv : s.entries) {
            if (kv.key != "equation") continue;
            try {
                equations.push_back(parse_poly(kv.value, ambient.coord_count(), spec));
            } catch (const ParseError& e) {
                throw ParseError(std::string("bad equation: ") + e.what(), kv.line);
            }
        }
        std::optional<TypeDescriptor> type;
        if (const KvLine* t = s.find("type")) type = parse_type(t->value, t->line);

        try {
            problem.varieties.push_back(NamedVariety{
                s.name, field_name,
                make_variety(ambient, std::move(equations), static_cast<int>(dim), spec, type)});
        } catch (const ValidationError& e) {
            throw ValidationError(s.context() + ": " + e.what());
        }
    }

    for (const auto& s : stanzas) {
        if (s.kind != "cover") continue;
        check_unique(s.kind, s.name, s.line);
        std::string src_name = s.required("source");
        std::string tgt_name = s.required("target");
        const NamedVariety* src = problem.find_variety(src_name);
        if (!src) throw ParseError("unknown source variety '" + src_name + "'", s.line);
        const NamedVariety* tgt = problem.find_variety(tgt_name);
        if (!tgt) throw ParseError("unknown target variety '" + tgt_name + "'", s.line);

        std::optional<std::int64_t> degree;
        {
            std::string d = s.required("degree");
            if (d != "unbounded") degree = parse_int(d, s.find("degree")->line, "degree");
        }

        const int src_coords = src->variety.ambient.coord_count();
        std::vector<std::vector<Multinomial>> chart_maps;
        const KvLine* plain_map = s.find("map");
        bool has_charts = false;
        for (const auto& kv : s.entries)
            if (kv.key.rfind("chart", 0) == 0) has_charts = true;
        if (plain_map && has_charts)
            throw ParseError("cover gives both 'map' and per-chart tuples", s.line);
        auto parse_tuple = [&](const std::string& value, int line) {
            std::vector<Multinomial> tuple;
            for (const auto& expr : split_map_list(value, line)) {
                try {
                    tuple.push_back(parse_poly(expr, src_coords, src->variety.spec));
                } catch (const ParseError& e) {
                    throw ParseError(std::string("bad map entry: ") + e.what(), line);
                }
            }
            return tuple;
        };
        if (plain_map) {
            chart_maps.push_back(parse_tuple(plain_map->value, plain_map->line));
        } else if (has_charts) {
            const int ncharts = src->variety.ambient.n + 1;
            if (src->variety.ambient.kind != AmbientKind::Projective)
                throw ParseError("per-chart tuples apply to projective sources", s.line);
            chart_maps.resize(ncharts);
            std::vector<bool> seen(ncharts, false);
            for (const auto& kv : s.entries) {
                if (kv.key.rfind("chart", 0) != 0) continue;
                std::int64_t idx = parse_int(kv.key.substr(5), kv.line, "chart index");
                if (idx < 0 || idx >= ncharts)
                    throw ParseError("chart index out of range", kv.line);
                chart_maps[idx] = parse_tuple(kv.value, kv.line);
                seen[idx] = true;
            }
            for (int i = 0; i < ncharts; ++i)
                if (!seen[i])
                    throw ParseError("missing chart" + std::to_string(i) + " tuple", s.line);
        } else {
            throw ParseError("cover is missing its map", s.line);
        }

        try {
            CoverOptions opts;
            opts.verify_depth = cfg.verify_depth;
            opts.budget = budget;
            problem.covers.push_back(NamedCover{
                s.name, src_name, tgt_name,
                make_cover(src->variety, tgt->variety, std::move(chart_maps), degree, opts)});
        } catch (const ValidationError& e) {
            throw ValidationError(s.context() + ": " + e.what());
        }
    }
    return problem;
}

Problem load_problem(const std::string& path, const RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_problem_text(buf.str(), cfg);
}

namespace {

std::string ambient_to_string(const Ambient& a) {
    return (a.kind == AmbientKind::Affine ? "affine " : "projective ") + std::to_string(a.n);
}

std::string modulus_to_string(const FieldSpec& spec) {
    FieldSpec prime = make_field(spec.p(), 1);
    Multinomial f(1, prime);
    const auto& mod = spec.modulus();
    for (std::size_t i = 0; i < mod.size(); ++i)
        f.add_term({static_cast<int>(i)}, prime.from_int(mod[i]));
    return f.to_string();
}

std::string tuple_to_string(const std::vector<Multinomial>& tuple) {
    std::string s = "[";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) s += ", ";
        s += tuple[i].to_string();
    }
    return s + "]";
}

} // namespace

std::string write_problem(const Problem& problem) {
    std::ostringstream out;
    out << "covlab-format 1\n";
    for (const auto& f : problem.fields) {
        if (f.implicit) continue;
        out << "\n[field " << f.name << "]\n";
        out << "gf = " << f.spec.to_string() << "\n";
        if (f.spec.k() >= 2) out << "modulus = " << modulus_to_string(f.spec) << "\n";
    }
    for (const auto& v : problem.varieties) {
        out << "\n[variety " << v.name << "]\n";
        const NamedField* f = problem.find_field(v.field_name);
        out << "field = " << (f && f->implicit ? f->spec.to_string() : v.field_name) << "\n";
        out << "ambient = " << ambient_to_string(v.variety.ambient) << "\n";
        out << "dim = " << v.variety.declared_dim << "\n";
        for (const auto& eq : v.variety.equations) out << "equation = " << eq.to_string() << "\n";
        if (v.variety.type.has_value())
            out << "type = (" << v.variety.type->n << ", " << v.variety.type->r << ", "
                << v.variety.type->d << ")\n";
    }
    for (const auto& c : problem.covers) {
        out << "\n[cover " << c.name << "]\n";
        out << "source = " << c.source_name << "\n";
        out << "target = " << c.target_name << "\n";
        bool uniform = true;
        for (const auto& tuple : c.cover.chart_maps)
            if (tuple != c.cover.chart_maps.front()) uniform = false;
        if (uniform) {
            out << "map = " << tuple_to_string(c.cover.chart_maps.front()) << "\n";
        } else {
            for (std::size_t i = 0; i < c.cover.chart_maps.size(); ++i)
                out << "chart" << i << " = " << tuple_to_string(c.cover.chart_maps[i]) << "\n";
        }
        if (c.cover.degree.has_value())
            out << "degree = " << *c.cover.degree << "\n";
        else
            out << "degree = unbounded\n";
    }
    return out.str();
}

} // namespace covlab
