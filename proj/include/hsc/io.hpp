#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsc/census.hpp"
#include "hsc/cylinder.hpp"
#include "hsc/error.hpp"
#include "hsc/graph.hpp"
#include "hsc/horseshoe.hpp"
#include "hsc/loop_select.hpp"
#include "hsc/suspension.hpp"
#include "hsc/thermo.hpp"

namespace hsc {

using Json = nlohmann::ordered_json;

// Input rejected by a schema check; carries the source line (0 if unknown) and JSON pointer.
class InputError : public InvalidInput {
 public:
  InputError(std::string source, std::size_t line, std::string field, const std::string& message);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
};

// Parsed JSON plus the line on which each value starts, keyed by JSON pointer.
struct JsonDocument {
  Json value;
  std::string source;
  std::map<std::string, std::size_t> lines;

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const;
  std::size_t line_of(const std::string& pointer) const;
};

JsonDocument parse_json(const std::string& text, const std::string& source = "<input>");
JsonDocument read_json_file(const std::string& path);

// Words as arrays of symbol indices, or as strings of letters / dot- or comma-separated indices.
Word word_from_json(const JsonDocument& doc, const std::string& pointer);
Rational rational_from_string(const std::string& text);

// {"alphabet_size": L, "edges": [[a, b], ...]}
TransitionGraph graph_from_json(const JsonDocument& doc);
Json graph_to_json(const TransitionGraph& g);

// {"depth": k, "values": {"word": "p/q", ...}} with optional "alphabet_size"; otherwise the
// caller's alphabet or the largest symbol used. With a graph, only its admissible words need values.
RoofFunction roof_from_json(const JsonDocument& doc, std::optional<std::size_t> alphabet = std::nullopt,
                            const TransitionGraph* graph = nullptr);
Json roof_to_json(const CylinderFunction& roof);

// {"kind": "bernoulli", "weights": [...]} or {"kind": "markov", "P": [[...]], "pi": [...]}
MarkovMeasure measure_from_json(const JsonDocument& doc);
Json measure_to_json(const MarkovMeasure& m);

// {"L": L, "lambda": x, "roofs": [...], "embedding": {"major_radius": R, "tube_scale": rho}}
// with optional "x_offsets" / "y_offsets" (canonical strips otherwise).
AffineHorseshoeModel model_from_json(const JsonDocument& doc);
Json model_to_json(const AffineHorseshoeModel& model);

// {"past": w, "middle": w, "future": w, "start": i, "height": x or "p/q"}; the exact height is
// returned separately when given as a rational string.
FlowPoint flowpoint_from_json(const JsonDocument& doc, std::optional<Rational>* exact_height = nullptr);
Json flowpoint_to_json(const FlowPoint& x, std::optional<Rational> exact_height = std::nullopt);

Json harvest_to_json(const LoopHarvest& h);
Json orbit_classes_to_json(const std::vector<OrbitClass>& classes);
Json chord_classes_to_json(const std::vector<ChordClass>& classes);
Json word_to_json(const Word& w);

// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_double(double x);

// Header "T,N(T),log N(T)".
void write_census_csv(std::ostream& out, const std::vector<double>& grid, const std::vector<std::uint64_t>& counts);

// Header "t,x,y,z"; the first vertex is repeated at t = period to close the polyline.
void write_orbit_csv(std::ostream& out, const Orbit3D& orbit);

// Square matrix with the labels as header row and first column.
void write_linking_csv(std::ostream& out, const std::vector<std::string>& labels,
                       const std::vector<std::vector<int>>& matrix);

}  // namespace hsc
