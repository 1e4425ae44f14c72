#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hsc/census.hpp"
#include "hsc/error.hpp"
#include "hsc/graph.hpp"
#include "hsc/horseshoe.hpp"
#include "hsc/io.hpp"
#include "hsc/linking.hpp"
#include "hsc/loop_select.hpp"
#include "hsc/spanning.hpp"
#include "hsc/suspension.hpp"
#include "hsc/thermo.hpp"

using namespace hsc;

namespace {

enum Exit { kOk = 0, kUserError = 1, kInternal = 2 };

void emit_error(int code, const std::string& kind, const std::string& message, const InputError* input = nullptr) {
  Json err{{"code", code}, {"kind", kind}, {"message", message}};
  if (input) {
    err["source"] = input->source();
    if (input->line()) err["line"] = input->line();
    if (!input->field().empty()) err["field"] = input->field();
  }
  std::cerr << Json{{"error", err}}.dump() << '\n';
}

std::size_t resolve_threads(std::optional<std::size_t> flag) {
  if (flag) {
    if (*flag == 0) throw InvalidInput("--threads must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("HSC_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw InvalidInput("HSC_THREADS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return 1;
}

// Writes to the file when given, stdout otherwise.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed for " + path);
}

Word parse_word(const std::string& text) {
  JsonDocument doc = parse_json(Json(text).dump(), "argument");
  return word_from_json(doc, "");
}

std::vector<Word> parse_word_list(const std::vector<std::string>& items) {
  std::vector<Word> out;
  for (const auto& s : items) out.push_back(parse_word(s));
  return out;
}

std::vector<double> grid_up_to(double T, double step) {
  if (!(T > 0.0)) throw InvalidInput("--T must be positive");
  if (!(step > 0.0)) throw InvalidInput("--step must be positive");
  std::vector<double> g;
  for (std::size_t k = 1;; ++k) {
    const double t = static_cast<double>(k) * step;
    if (t > T * (1 + 1e-12)) break;
    g.push_back(t);
  }
  if (g.empty() || g.back() < T * (1 - 1e-12)) g.push_back(T);
  return g;
}

void check_increasing(const std::vector<double>& g) {
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1])) throw InvalidInput("T grid must be strictly increasing");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic dynamics, suspension flows and horseshoe models"};
  app.require_subcommand(1);
  std::optional<std::size_t> threads_flag;
  app.add_option("--threads", threads_flag, "worker threads (default: HSC_THREADS, else 1)");
  app.fallthrough();

  // shift
  auto* shift = app.add_subcommand("shift", "transitivity, spectral decomposition and loop counts of a graph");
  std::string shift_graph, shift_out;
  std::size_t shift_loops = 0;
  shift->add_option("--graph", shift_graph, "graph JSON")->required();
  shift->add_option("--loops", shift_loops, "also count loops of this length at each vertex");
  shift->add_option("--out", shift_out, "output JSON (stdout if omitted)");

  // entropy
  auto* entropy = app.add_subcommand("entropy", "spanning-set entropy of a model, or weight-equation entropy of a roof");
  std::string ent_model, ent_roof, ent_measure, ent_out;
  double ent_T = 20.0;
  std::vector<double> ent_eps;
  entropy->add_option("--model", ent_model, "model JSON (spanning-set estimate)");
  entropy->add_option("--roof", ent_roof, "depth-1 roof JSON (weight equation)");
  entropy->add_option("--measure", ent_measure, "measure JSON for the Abramov entropy with --roof");
  entropy->add_option("--T", ent_T, "time horizon");
  entropy->add_option("--eps", ent_eps, "comma-separated epsilons")->delimiter(',');
  entropy->add_option("--out", ent_out, "output file (stdout if omitted)");

  // loops
  auto* loops = app.add_subcommand("loops", "harvest loops with typical Birkhoff averages");
  std::string lp_graph, lp_measure, lp_potential, lp_out;
  double lp_eps = 0.1;
  std::size_t lp_m = 8, lp_depth = 2;
  std::uint64_t lp_seed = 0;
  loops->add_option("--graph", lp_graph, "graph JSON (full shift on the measure's alphabet if omitted)");
  loops->add_option("--measure", lp_measure, "measure JSON")->required();
  loops->add_option("--potential", lp_potential, "potential JSON (roof schema, values may be negative)")->required();
  loops->add_option("--eps", lp_eps, "Birkhoff window epsilon");
  loops->add_option("--m", lp_m, "loop length");
  loops->add_option("--depth", lp_depth, "concatenation depth to verify");
  loops->add_option("--seed", lp_seed, "seed for sampled concatenation checks");
  loops->add_option("--out", lp_out, "output JSON (stdout if omitted)");

  // census
  auto* census = app.add_subcommand("census", "count periodic-orbit or chord classes up to time T");
  std::size_t cs_L = 2;
  std::string cs_roof, cs_out, cs_classes, cs_past, cs_future;
  double cs_T = 20.0, cs_step = 1.0;
  std::vector<double> cs_grid;
  census->add_option("--alphabet", cs_L, "number of symbols")->required();
  census->add_option("--roof", cs_roof, "roof JSON")->required();
  census->add_option("--T", cs_T, "largest period");
  census->add_option("--step", cs_step, "grid spacing of the CSV");
  census->add_option("--grid", cs_grid, "explicit comma-separated T grid")->delimiter(',');
  census->add_option("--past", cs_past, "chord census: past boundary orbit word");
  census->add_option("--future", cs_future, "chord census: future boundary orbit word");
  census->add_option("--out", cs_out, "CSV of T, N(T), log N(T) (stdout if omitted)");
  census->add_option("--classes", cs_classes, "JSON list of classes up to T");

  // model
  auto* model = app.add_subcommand("model", "build an affine horseshoe model and export orbits");
  std::string md_model, md_out, md_orbit, md_orbit_out;
  std::size_t md_L = 2;
  double md_lambda = 0.2, md_resolution = kDefaultResolution;
  std::vector<double> md_roofs;
  model->add_option("--model", md_model, "model JSON (otherwise built from --L, --lambda, --roofs)");
  model->add_option("--L", md_L, "branches");
  model->add_option("--lambda", md_lambda, "contraction");
  model->add_option("--roofs", md_roofs, "comma-separated roofs")->delimiter(',');
  model->add_option("--orbit", md_orbit, "itinerary of a periodic orbit to export");
  model->add_option("--resolution", md_resolution, "vertex spacing of exported orbits");
  model->add_option("--orbit-out", md_orbit_out, "orbit CSV t,x,y,z (stdout if omitted)");
  model->add_option("--out", md_out, "model JSON with checks (stdout if omitted)");

  // linking
  auto* linking = app.add_subcommand("linking", "pairwise linking numbers of periodic orbits");
  std::string lk_model, lk_out;
  std::vector<std::string> lk_orbits;
  double lk_resolution = kDefaultResolution;
  linking->add_option("--model", lk_model, "model JSON")->required();
  linking->add_option("--orbits", lk_orbits, "comma-separated itineraries")->required()->delimiter(',');
  linking->add_option("--resolution", lk_resolution, "vertex spacing");
  linking->add_option("--out", lk_out, "linking matrix CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(kUserError, "UsageError", e.what());
    return kUserError;
  }

  try {
    const std::size_t threads = resolve_threads(threads_flag);

    if (*shift) {
      const TransitionGraph g = graph_from_json(read_json_file(shift_graph));
      Json out = graph_to_json(g);
      out["transitive"] = is_transitive(g);
      if (is_transitive(g)) {
        const auto sd = spectral_decomposition(g);
        out["period"] = sd.period;
        out["classes"] = sd.classes;
      }
      if (shift_loops > 0) {
        Json counts = Json::array();
        for (Symbol v = 0; v < g.alphabet_size(); ++v) counts.push_back(enumerate_loops(g, v, shift_loops).size());
        out["loop_length"] = shift_loops;
        out["loop_counts"] = counts;
      }
      write_output(shift_out, out.dump(2) + "\n");
    } else if (*entropy) {
      if (ent_model.empty() == ent_roof.empty()) throw InvalidInput("give exactly one of --model and --roof");
      if (!ent_model.empty()) {
        if (ent_eps.empty()) throw InvalidInput("--eps is required with --model");
        const auto m = model_from_json(read_json_file(ent_model));
        const auto res = spanning_entropy(m, ent_T, ent_eps, threads);
        std::ostringstream os;
        os << "epsilon,estimate,raw\n";
        for (const auto& p : res.points)
          os << format_double(p.epsilon) << ',' << format_double(p.estimate) << ',' << format_double(p.raw) << '\n';
        os << "0," << format_double(res.extrapolated) << ",\n";
        write_output(ent_out, os.str());
      } else {
        const RoofFunction roof = roof_from_json(read_json_file(ent_roof));
        if (roof.depth() != 1) throw InvalidInput("weight equation needs a depth-1 roof");
        std::vector<double> r;
        for (Symbol a = 0; a < roof.alphabet_size(); ++a) r.push_back(roof.value({a}));
        const auto sol = solve_weight_equation(r);
        Json out{{"h", sol.h}, {"weights", sol.weights}};
        if (!ent_measure.empty()) {
          const auto mu = measure_from_json(read_json_file(ent_measure));
          out["measure_entropy"] = measure_entropy(mu);
          out["abramov_entropy"] = abramov_entropy(mu, roof);
        }
        write_output(ent_out, out.dump(2) + "\n");
      }
    } else if (*loops) {
      const auto mu = measure_from_json(read_json_file(lp_measure));
      const TransitionGraph g = lp_graph.empty() ? TransitionGraph::full_shift(mu.alphabet_size())
                                                 : graph_from_json(read_json_file(lp_graph));
      const JsonDocument pdoc = read_json_file(lp_potential);
      // Potentials share the roof schema but may be nonpositive, so read them as plain tables.
      const std::size_t depth = pdoc.value.value("depth", 1);
      CylinderFunction pot(g.alphabet_size(), depth);
      if (!pdoc.value.contains("values") || !pdoc.value["values"].is_object()) pdoc.fail("/values", "expected an object");
      for (const auto& [key, val] : pdoc.value["values"].items()) {
        const std::string ptr = "/values/" + key;
        const Word w = word_from_json(parse_json(Json(key).dump(), pdoc.source), "");
        if (w.size() != depth) pdoc.fail(ptr, "word length differs from depth");
        for (Symbol a : w)
          if (a >= g.alphabet_size()) pdoc.fail(ptr, "symbol outside the alphabet");
        if (val.is_string()) pot.set(w, boost::rational_cast<double>(rational_from_string(val.get<std::string>())));
        else if (val.is_number()) pot.set(w, val.get<double>());
        else pdoc.fail(ptr, "expected a number");
      }
      const auto h = harvest_loops(g, mu, pot, lp_eps, lp_m, threads);
      Json out = harvest_to_json(h);
      const auto check = verify_concatenations(h, pot, lp_depth, lp_seed);
      out["concatenation"] = {{"depth", lp_depth},
                              {"passed", check.passed},
                              {"exhaustive", check.exhaustive},
                              {"tuples_checked", check.tuples_checked},
                              {"seed", lp_seed}};
      out["loop_pressure"] = h.loops.empty() ? Json(nullptr) : Json(loop_pressure_sum(h.loops, pot, h.length));
      write_output(lp_out, out.dump(2) + "\n");
    } else if (*census) {
      const RoofFunction roof = roof_from_json(read_json_file(cs_roof), cs_L);
      std::vector<double> grid = cs_grid.empty() ? grid_up_to(cs_T, cs_step) : cs_grid;
      check_increasing(grid);
      const double T = grid.back();
      if (cs_past.empty() != cs_future.empty()) throw InvalidInput("chord census needs both --past and --future");
      std::vector<double> lengths;
      Json classes;
      if (cs_past.empty()) {
        if (!cs_classes.empty()) {
          const auto cls = census_orbits(roof, cs_L, T, threads);
          for (const auto& c : cls) lengths.push_back(c.period);
          std::sort(lengths.begin(), lengths.end());
          classes = orbit_classes_to_json(cls);
        } else {
          lengths = orbit_lengths(roof, cs_L, T, threads);
        }
      } else {
        const Necklace past(parse_word(cs_past)), future(parse_word(cs_future));
        if (!cs_classes.empty()) {
          const auto cls = census_chords(roof, cs_L, past, future, T);
          for (const auto& c : cls) lengths.push_back(c.length);
          std::sort(lengths.begin(), lengths.end());
          classes = chord_classes_to_json(cls);
        } else {
          lengths = chord_lengths(roof, cs_L, past, future, T);
        }
      }
      std::ostringstream os;
      write_census_csv(os, grid, cumulative_counts(lengths, grid));
      write_output(cs_out, os.str());
      if (!cs_classes.empty()) write_output(cs_classes, classes.dump(2) + "\n");
    } else if (*model) {
      const AffineHorseshoeModel m = md_model.empty()
                                         ? build_model(md_L, md_lambda, md_roofs.empty() ? std::vector<double>(md_L, 1.0) : md_roofs)
                                         : model_from_json(read_json_file(md_model));
      Json out = model_to_json(m);
      out["markov_type"] = verify_markov_type(m);
      out["strip_gap"] = m.strip_gap();
      out["speed_bound"] = m.speed_bound();
      if (!md_orbit.empty()) {
        const Necklace w(parse_word(md_orbit));
        const Orbit3D orbit = periodic_orbit(m, w, md_resolution);
        const auto pattern = intersection_pattern(m, orbit);
        out["orbit"] = {{"word", word_to_json(w.canonical())},
                        {"period", orbit.period},
                        {"closure_error", orbit.closure_error},
                        {"vertices", orbit.vertices.size()},
                        {"count_D0", pattern.count_D0},
                        {"sequence", word_to_json(pattern.sequence)}};
        std::ostringstream os;
        write_orbit_csv(os, orbit);
        if (md_orbit_out.empty() && md_out.empty()) throw InvalidInput("--orbit needs --orbit-out or --out");
        write_output(md_orbit_out, os.str());
      }
      write_output(md_out, out.dump(2) + "\n");
    } else if (*linking) {
      const AffineHorseshoeModel m = model_from_json(read_json_file(lk_model));
      const auto words = parse_word_list(lk_orbits);
      std::vector<Orbit3D> orbits;
      std::vector<std::string> labels;
      for (const Word& w : words) {
        orbits.push_back(periodic_orbit(m, Necklace(w), lk_resolution));
        labels.push_back(to_string(w));
      }
      std::vector<std::vector<int>> matrix(orbits.size(), std::vector<int>(orbits.size(), 0));
      for (std::size_t i = 0; i < orbits.size(); ++i)
        for (std::size_t j = i + 1; j < orbits.size(); ++j)
          matrix[i][j] = matrix[j][i] = linking_number(orbits[i], orbits[j]);
      std::ostringstream os;
      write_linking_csv(os, labels, matrix);
      write_output(lk_out, os.str());
    }
    return kOk;
  } catch (const InputError& e) {
    emit_error(kUserError, "InputError", e.what(), &e);
    return kUserError;
  } catch (const NotTransitive& e) {
    emit_error(kUserError, "NotTransitive", e.what());
    return kUserError;
  } catch (const InvalidInput& e) {
    emit_error(kUserError, "InvalidInput", e.what());
    return kUserError;
  } catch (const Overflow& e) {
    emit_error(kUserError, "Overflow", e.what());
    return kUserError;
  } catch (const NumericalFailure& e) {
    emit_error(kUserError, "NumericalFailure", e.what());
    return kUserError;
  } catch (const std::exception& e) {
    emit_error(kInternal, "InternalError", e.what());
    return kInternal;
  }
}
