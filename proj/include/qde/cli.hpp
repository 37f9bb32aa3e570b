#pragma once
// Text formats and command dispatch: the line-oriented graph document
// (vertices, edges, field values, gamma declarations, embedded points), its
// parser and serializer, and the command-line entry point used by the tool.
// All reals accept exact fractions a/b as well as decimals; reports are
// stable key: value lines and trajectories are CSV.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qde/graph.hpp"

namespace qde {

// Parsed form of the document grammar:
//   graph <name>            (optional)
//   vertex <id>
//   edge <id> <id>
//   field <id> <re> <im>
//   gamma <value>  |  gamma_at <id> <value>
//   point <id> <c1> ... <cN>
// with '#' comments and whitespace-separated tokens.
struct GraphDocument {
    std::string name;
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<std::pair<std::string, Complex>> field;
    std::optional<double> gamma;
    std::vector<std::pair<std::string, double>> gamma_at;
    std::vector<std::pair<std::string, std::vector<double>>> points;

    bool operator==(const GraphDocument&) const = default;

    Graph graph() const;
    bool has_field() const { return !field.empty(); }
    Field field_values() const;  // throws std::runtime_error when absent
    bool has_gamma() const { return gamma.has_value() || !gamma_at.empty(); }
    GammaAssignment gamma_assignment() const;  // throws when absent
};

// Raised for malformed documents ("line N: message") and command usage
// problems; run_command maps it to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GraphDocument parse_graph(const std::string& text);
std::string serialize_graph(const GraphDocument& doc);

// Dispatches one command (argv without the program name) and writes the
// report to `out` and diagnostics to `err`.  Returns 0 on success, 1 when a
// verification or computation fails, 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace qde
