#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covlab/constructions.hpp"
#include "covlab/covers.hpp"

namespace covlab {

enum class OutputFormat { Table, Csv, Structured };

OutputFormat parse_format(const std::string& name);
std::string format_to_string(OutputFormat f);

// Run-wide configuration shared by the CLI commands.
struct RunConfig {
    std::int64_t budget = kDefaultBudget;
    int max_ext = 4;
    std::uint64_t seed = 1;
    OutputFormat format = OutputFormat::Table;
    int verify_depth = 2;

    void validate() const {
        if (budget < 1) throw ValidationError("budget must be at least 1");
        if (max_ext < 1) throw ValidationError("max extension degree must be at least 1");
        if (verify_depth < 1) throw ValidationError("verify depth must be at least 1");
    }
    Budget as_budget() const { return Budget{budget}; }
};

struct NamedField {
    std::string name;
    FieldSpec spec;
    bool implicit = false; // auto-registered from an inline GF(...) literal
};

struct NamedVariety {
    std::string name;
    std::string field_name;
    VarietyDesc variety;
};

struct NamedCover {
    std::string name;
    std::string source_name;
    std::string target_name;
    CoverDesc cover;
};

// A parsed and fully validated problem file, declaration order preserved.
struct Problem {
    std::vector<NamedField> fields;
    std::vector<NamedVariety> varieties;
    std::vector<NamedCover> covers;

    const NamedField* find_field(const std::string& name) const;
    const NamedVariety* find_variety(const std::string& name) const;
    const NamedCover* find_cover(const std::string& name) const;
};

// Stanza text format, versioned with a "covlab-format 1" header line.
// Parse errors carry line numbers; validation errors name the stanza.
Problem load_problem_text(const std::string& text, const RunConfig& cfg);
Problem load_problem(const std::string& path, const RunConfig& cfg);

// Canonical stanza text; load_problem_text(write_problem(p)) reproduces p.
std::string write_problem(const Problem& problem);

} // namespace covlab
