#include "hsc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace hsc {

namespace {

std::string escape_pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Line of every value, keyed by JSON pointer. Runs after a successful parse, so the text is valid.
class LineScanner {
 public:
  LineScanner(const std::string& text, std::map<std::string, std::size_t>& lines) : s_(text), lines_(lines) {}
  void run() { value(""); }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
      if (s_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }
  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
        out += s_[pos_ + 1];
        pos_ += 2;
        continue;
      }
      out += s_[pos_++];
    }
    ++pos_;
    return out;
  }
  void value(const std::string& ptr) {
    skip_ws();
    lines_[ptr] = line_;
    if (pos_ >= s_.size()) return;
    const char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      if (s_[pos_] == '}') {
        ++pos_;
        return;
      }
      while (true) {
        skip_ws();
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        value(ptr + "/" + escape_pointer_token(key));
        skip_ws();
        if (s_[pos_++] == '}') return;
      }
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      if (s_[pos_] == ']') {
        ++pos_;
        return;
      }
      for (std::size_t i = 0;; ++i) {
        value(ptr + "/" + std::to_string(i));
        skip_ws();
        if (s_[pos_++] == ']') return;
      }
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != '}' && s_[pos_] != ']' && s_[pos_] != ' ' &&
             s_[pos_] != '\n' && s_[pos_] != '\r' && s_[pos_] != '\t')
        ++pos_;
    }
  }

  const std::string& s_;
  std::map<std::string, std::size_t>& lines_;
  std::size_t pos_ = 0, line_ = 1;
};

const Json& at(const JsonDocument& doc, const std::string& pointer) {
  const Json::json_pointer p(pointer);
  if (!doc.value.contains(p)) doc.fail(pointer, "missing required field");
  return doc.value.at(p);
}

double number_at(const JsonDocument& doc, const std::string& pointer) {
  const Json& v = at(doc, pointer);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return boost::rational_cast<double>(rational_from_string(v.get<std::string>()));
    } catch (const InvalidInput& e) {
      doc.fail(pointer, e.what());
    }
  }
  doc.fail(pointer, "expected a number");
}

std::size_t count_at(const JsonDocument& doc, const std::string& pointer) {
  const Json& v = at(doc, pointer);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) doc.fail(pointer, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<double> numbers_at(const JsonDocument& doc, const std::string& pointer) {
  const Json& v = at(doc, pointer);
  if (!v.is_array()) doc.fail(pointer, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number_at(doc, pointer + "/" + std::to_string(i)));
  return out;
}

Json rational_json(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Word word_from_key(const std::string& key) {
  if (key.empty()) throw InvalidInput("empty word");
  if (key.find_first_of(".,0123456789") == std::string::npos) return word_from_string(key);
  Word w;
  std::size_t i = 0;
  while (i <= key.size()) {
    std::size_t j = key.find_first_of(".,", i);
    if (j == std::string::npos) j = key.size();
    const std::string part = key.substr(i, j - i);
    Symbol v = 0;
    const auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || p != part.data() + part.size()) {
      throw InvalidInput("bad word '" + key + "'");
    }
    w.push_back(v);
    i = j + 1;
  }
  return w;
}

}  // namespace

InputError::InputError(std::string source, std::size_t line, std::string field, const std::string& message)
    : InvalidInput(source + (line ? ":" + std::to_string(line) : std::string()) +
                   (field.empty() ? std::string() : ": field " + field) + ": " + message),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

std::size_t JsonDocument::line_of(const std::string& pointer) const {
  // Missing fields report the nearest existing ancestor.
  std::string p = pointer;
  while (true) {
    auto it = lines.find(p);
    if (it != lines.end()) return it->second;
    if (p.empty()) return 0;
    p = p.substr(0, p.rfind('/'));
  }
}

void JsonDocument::fail(const std::string& pointer, const std::string& message) const {
  throw InputError(source, line_of(pointer), pointer.empty() ? "/" : pointer, message);
}

JsonDocument parse_json(const std::string& text, const std::string& source) {
  JsonDocument doc;
  doc.source = source;
  try {
    doc.value = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i)
      if (text[i] == '\n') ++line;
    throw InputError(source, line, "", std::string("malformed JSON: ") + e.what());
  }
  LineScanner(text, doc.lines).run();
  return doc;
}

JsonDocument read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, 0, "", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Rational rational_from_string(const std::string& text) {
  auto parse_int = [&](const std::string& s) {
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      throw InvalidInput("not a rational number: '" + text + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + text + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 15) throw InvalidInput("too many decimal digits in '" + text + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string whole = text.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    const std::int64_t w = whole.empty() || whole == "-" ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    return Rational(w) + Rational(neg ? -f : f, den);
  }
  return Rational(parse_int(text));
}

Word word_from_json(const JsonDocument& doc, const std::string& pointer) {
  const Json& v = at(doc, pointer);
  if (v.is_string()) {
    try {
      return word_from_key(v.get<std::string>());
    } catch (const InvalidInput& e) {
      doc.fail(pointer, e.what());
    }
  }
  if (!v.is_array() || v.empty()) doc.fail(pointer, "expected a nonempty word");
  Word w;
  for (std::size_t i = 0; i < v.size(); ++i) w.push_back(static_cast<Symbol>(count_at(doc, pointer + "/" + std::to_string(i))));
  return w;
}

TransitionGraph graph_from_json(const JsonDocument& doc) {
  if (!doc.value.is_object()) doc.fail("", "expected an object");
  const std::size_t L = count_at(doc, "/alphabet_size");
  const Json& edges = at(doc, "/edges");
  if (!edges.is_array()) doc.fail("/edges", "expected an array of [a, b] pairs");
  std::vector<std::pair<Symbol, Symbol>> list;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    if (!edges[i].is_array() || edges[i].size() != 2) doc.fail(p, "expected a pair [a, b]");
    const std::size_t a = count_at(doc, p + "/0"), b = count_at(doc, p + "/1");
    if (a >= L || b >= L) doc.fail(p, "symbol outside the alphabet");
    list.emplace_back(static_cast<Symbol>(a), static_cast<Symbol>(b));
  }
  try {
    return TransitionGraph(L, std::move(list));
  } catch (const InvalidInput& e) {
    doc.fail("/edges", e.what());
  }
}

Json graph_to_json(const TransitionGraph& g) {
  Json j;
  j["alphabet_size"] = g.alphabet_size();
  j["edges"] = Json::array();
  for (auto [a, b] : g.edges()) j["edges"].push_back({a, b});
  return j;
}

RoofFunction roof_from_json(const JsonDocument& doc, std::optional<std::size_t> alphabet,
                            const TransitionGraph* graph) {
  if (!doc.value.is_object()) doc.fail("", "expected an object");
  const std::size_t depth = count_at(doc, "/depth");
  if (depth == 0) doc.fail("/depth", "depth must be at least 1");
  if (doc.value.contains("alphabet_size")) {
    const std::size_t L = count_at(doc, "/alphabet_size");
    if (alphabet && *alphabet != L) doc.fail("/alphabet_size", "disagrees with the requested alphabet");
    alphabet = L;
  }
  const Json& values = at(doc, "/values");
  if (!values.is_object() || values.empty()) doc.fail("/values", "expected a nonempty object of word -> value");
  std::vector<std::pair<Word, std::string>> entries;
  std::size_t used = 0;
  for (const auto& [key, val] : values.items()) {
    const std::string p = "/values/" + escape_pointer_token(key);
    Word w;
    try {
      w = word_from_key(key);
    } catch (const InvalidInput& e) {
      doc.fail(p, e.what());
    }
    if (w.size() != depth) doc.fail(p, "word length differs from depth");
    for (Symbol a : w) used = std::max<std::size_t>(used, a + 1);
    entries.emplace_back(std::move(w), p);
  }
  const std::size_t L = alphabet.value_or(used);
  if (used > L) doc.fail("/values", "word uses a symbol outside the alphabet");
  CylinderFunction f(L, depth);
  for (const auto& [w, p] : entries) {
    const Json& v = doc.value.at(Json::json_pointer(p));
    if (v.is_string()) {
      try {
        f.set(w, rational_from_string(v.get<std::string>()));
      } catch (const InvalidInput& e) {
        doc.fail(p, e.what());
      }
    } else if (v.is_number_integer()) {
      f.set(w, Rational(v.get<std::int64_t>()));
    } else if (v.is_number()) {
      f.set(w, v.get<double>());
    } else {
      doc.fail(p, "expected a rational string or a number");
    }
  }
  try {
    if (graph) return RoofFunction(f, *graph);
    return RoofFunction(f);
  } catch (const InvalidInput& e) {
    doc.fail("/values", e.what());
  }
}

Json roof_to_json(const CylinderFunction& roof) {
  Json j;
  j["alphabet_size"] = roof.alphabet_size();
  j["depth"] = roof.depth();
  Json values = Json::object();
  for (std::size_t i = 0; i < roof.table_size(); ++i) {
    const Word w = roof.word_at(i);
    if (!roof.defined(w)) continue;
    const auto ex = roof.exact_value(w);
    values[to_string(w)] = ex ? rational_json(*ex) : Json(format_double(roof.value(w)));
  }
  j["values"] = values;
  return j;
}

MarkovMeasure measure_from_json(const JsonDocument& doc) {
  if (!doc.value.is_object()) doc.fail("", "expected an object");
  const Json& kind = at(doc, "/kind");
  if (!kind.is_string()) doc.fail("/kind", "expected \"bernoulli\" or \"markov\"");
  try {
    if (kind == "bernoulli") return MarkovMeasure::bernoulli(numbers_at(doc, "/weights"));
    if (kind == "markov") {
      const Json& P = at(doc, "/P");
      if (!P.is_array()) doc.fail("/P", "expected a matrix");
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < P.size(); ++i) rows.push_back(numbers_at(doc, "/P/" + std::to_string(i)));
      return MarkovMeasure::markov(std::move(rows), numbers_at(doc, "/pi"));
    }
  } catch (const InputError&) {
    throw;
  } catch (const InvalidInput& e) {
    doc.fail("", e.what());
  }
  doc.fail("/kind", "expected \"bernoulli\" or \"markov\"");
}

Json measure_to_json(const MarkovMeasure& m) {
  Json j;
  if (m.is_bernoulli()) {
    j["kind"] = "bernoulli";
    j["weights"] = m.marginals();
  } else {
    j["kind"] = "markov";
    Json P = Json::array();
    for (std::size_t a = 0; a < m.alphabet_size(); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < m.alphabet_size(); ++b)
        row.push_back(m.transition(static_cast<Symbol>(a), static_cast<Symbol>(b)));
      P.push_back(row);
    }
    j["P"] = P;
    j["pi"] = m.marginals();
  }
  return j;
}

AffineHorseshoeModel model_from_json(const JsonDocument& doc) {
  if (!doc.value.is_object()) doc.fail("", "expected an object");
  const std::size_t L = count_at(doc, "/L");
  const double lambda = number_at(doc, "/lambda");
  const std::vector<double> roofs = numbers_at(doc, "/roofs");
  if (roofs.size() != L) doc.fail("/roofs", "expected one roof per branch");
  EmbeddingParams emb;
  if (doc.value.contains("embedding")) {
    if (doc.value["embedding"].contains("major_radius")) emb.major_radius = number_at(doc, "/embedding/major_radius");
    if (doc.value["embedding"].contains("tube_scale")) emb.tube_scale = number_at(doc, "/embedding/tube_scale");
  }
  try {
    if (doc.value.contains("x_offsets") || doc.value.contains("y_offsets")) {
      const auto a = numbers_at(doc, "/x_offsets");
      const auto b = numbers_at(doc, "/y_offsets");
      return AffineHorseshoeModel(lambda, roofs, a, b, emb);
    }
    return build_model(L, lambda, roofs, emb);
  } catch (const InvalidInput& e) {
    doc.fail("", e.what());
  }
}

Json model_to_json(const AffineHorseshoeModel& model) {
  Json j;
  j["L"] = model.branches();
  j["lambda"] = model.lambda();
  j["roofs"] = model.roofs();
  j["x_offsets"] = model.x_offsets();
  j["y_offsets"] = model.y_offsets();
  j["embedding"] = {{"major_radius", model.embedding().major_radius}, {"tube_scale", model.embedding().tube_scale}};
  return j;
}

FlowPoint flowpoint_from_json(const JsonDocument& doc, std::optional<Rational>* exact_height) {
  if (!doc.value.is_object()) doc.fail("", "expected an object");
  auto word_or_empty = [&](const std::string& key) {
    const Json& v = at(doc, "/" + key);
    if (v.is_array() && v.empty()) return Word{};
    return word_from_json(doc, "/" + key);
  };
  const Word past = word_from_json(doc, "/past");
  const Word middle = doc.value.contains("middle") ? word_or_empty("middle") : Word{};
  const Word future = word_from_json(doc, "/future");
  std::int64_t start = 0;
  if (doc.value.contains("start")) {
    if (!doc.value["start"].is_number_integer()) doc.fail("/start", "expected an integer");
    start = doc.value["start"].get<std::int64_t>();
  }
  const Json& h = at(doc, "/height");
  double height = 0.0;
  if (h.is_string()) {
    try {
      const Rational r = rational_from_string(h.get<std::string>());
      if (exact_height) *exact_height = r;
      height = boost::rational_cast<double>(r);
    } catch (const InvalidInput& e) {
      doc.fail("/height", e.what());
    }
  } else if (h.is_number()) {
    height = h.get<double>();
  } else {
    doc.fail("/height", "expected a number or a rational string");
  }
  if (!(height >= 0.0)) doc.fail("/height", "height must be nonnegative");
  return FlowPoint{Sequence(past, middle, future, start), height};
}

Json flowpoint_to_json(const FlowPoint& x, std::optional<Rational> exact_height) {
  Json j;
  j["past"] = word_to_json(x.base.past());
  j["middle"] = word_to_json(x.base.middle());
  j["future"] = word_to_json(x.base.future());
  j["start"] = x.base.start();
  j["height"] = exact_height ? rational_json(*exact_height) : Json(x.height);
  return j;
}

Json word_to_json(const Word& w) {
  Json a = Json::array();
  for (Symbol s : w) a.push_back(s);
  return a;
}

Json harvest_to_json(const LoopHarvest& h) {
  Json j;
  j["base_vertex"] = h.base_vertex;
  j["m"] = h.length;
  j["k"] = h.loops.size();
  j["epsilon"] = h.epsilon;
  j["entropy"] = h.entropy;
  j["mean_potential"] = h.mean_potential;
  j["threshold"] = h.threshold;
  j["certified"] = h.certified;
  Json loops = Json::array();
  for (const Word& w : h.loops) loops.push_back(word_to_json(w));
  j["loops"] = loops;
  return j;
}

Json orbit_classes_to_json(const std::vector<OrbitClass>& classes) {
  Json a = Json::array();
  for (const OrbitClass& c : classes)
    a.push_back({{"word", word_to_json(c.necklace.canonical())}, {"period", c.period}});
  return a;
}

Json chord_classes_to_json(const std::vector<ChordClass>& classes) {
  Json a = Json::array();
  for (const ChordClass& c : classes) {
    a.push_back({{"past", word_to_json(c.boundary_past.canonical())},
                 {"interior", word_to_json(c.interior)},
                 {"future", word_to_json(c.boundary_future.canonical())},
                 {"length", c.length}});
  }
  return a;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void write_census_csv(std::ostream& out, const std::vector<double>& grid, const std::vector<std::uint64_t>& counts) {
  if (grid.size() != counts.size()) throw InvalidInput("grid and counts differ in length");
  out << "T,N(T),log N(T)\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double logn = counts[i] ? std::log(static_cast<double>(counts[i])) : -std::numeric_limits<double>::infinity();
    out << format_double(grid[i]) << ',' << counts[i] << ',' << format_double(logn) << '\n';
  }
}

void write_orbit_csv(std::ostream& out, const Orbit3D& orbit) {
  out << "t,x,y,z\n";
  auto row = [&](double t, const Vec3& v) {
    out << format_double(t) << ',' << format_double(v.x) << ',' << format_double(v.y) << ',' << format_double(v.z)
        << '\n';
  };
  for (std::size_t i = 0; i < orbit.vertices.size(); ++i) row(orbit.times[i], orbit.vertices[i]);
  if (orbit.closed && !orbit.vertices.empty()) row(orbit.period, orbit.vertices.front());
}

void write_linking_csv(std::ostream& out, const std::vector<std::string>& labels,
                       const std::vector<std::vector<int>>& matrix) {
  out << "label";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << labels[i];
    for (int v : matrix.at(i)) out << ',' << v;
    out << '\n';
  }
}

}  // namespace hsc
