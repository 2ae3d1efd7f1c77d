// Command-line front end: every subcommand prints one result envelope
// {status, payload, diagnostics} as JSON (default) or a plain-text table.
// Exit codes: 0 complete, 2 partial (budget ran out), 1 error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quiddity/classify.hpp"
#include "quiddity/irreducible.hpp"
#include "quiddity/json_io.hpp"
#include "quiddity/mat2.hpp"
#include "quiddity/search.hpp"
#include "quiddity/tuples.hpp"

#ifndef QUIDDITY_DATA_DIR
#define QUIDDITY_DATA_DIR "."
#endif

namespace {

using nlohmann::json;
using namespace quiddity;

struct GlobalOpts {
  bool table = false;
  std::uint64_t budget = 1'000'000'000;
  std::uint32_t workers = 1;
  std::uint64_t table_threshold = 4096;
  std::uint64_t max_ring_size = std::uint64_t{1} << 20;
  std::string fixtures;  // empty = default data dir
};

std::string data_root() {
  if (const char* env = std::getenv("QUIDDITY_DATA")) return env;
  return QUIDDITY_DATA_DIR;
}

RingConfig ring_config(const GlobalOpts& g) {
  RingConfig cfg;
  cfg.max_ring_size = g.max_ring_size;
  cfg.table_threshold = g.table_threshold;
  return cfg;
}

SearchOptions search_options(const GlobalOpts& g) {
  SearchOptions opts;
  opts.node_budget = g.budget;
  opts.workers = g.workers;
  return opts;
}

json sign_to_json(const std::optional<SignSet>& sign) {
  if (!sign) return nullptr;
  json arr = json::array();
  if (sign->plus) arr.push_back("+");
  if (sign->minus) arr.push_back("-");
  return arr;
}

// ---------------------------------------------------------------------------
// Table renderers. JSON stays the source of truth; these flatten the same
// payloads for quick terminal reading.

void print_kv(const std::string& key, const json& value) {
  std::string text;
  if (value.is_string()) {
    text = value.get<std::string>();
  } else {
    text = value.dump();
  }
  std::printf("%-22s %s\n", key.c_str(), text.c_str());
}

std::string join_tuple(const json& tuple) {
  std::string out = "[";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ", ";
    out += tuple[i].get<std::string>();
  }
  return out + "]";
}

void print_search_table(const json& rep) {
  print_kv("ring", rep["ring"]);
  if (!rep["subset"].is_null()) print_kv("subset", join_tuple(rep["subset"]));
  print_kv("max size requested", rep["max_n_requested"]);
  print_kv("verified up to", rep["verified_up_to"]);
  print_kv("bound used", rep["bound_used"]);
  print_kv("max irreducible", rep["max_irreducible_found"]);
  print_kv("certified", rep["certified_complete"]);
  print_kv("budget exceeded", rep["budget_exceeded"]);
  print_kv("nodes", rep["nodes"]);
  std::printf("%4s %14s %12s %9s\n", "n", "quiddities", "irreducible", "classes");
  for (const auto& s : rep["sizes"]) {
    std::printf("%4llu %14llu %12llu %9llu\n",
                static_cast<unsigned long long>(s["n"].get<std::uint64_t>()),
                static_cast<unsigned long long>(s["quiddities"].get<std::uint64_t>()),
                static_cast<unsigned long long>(s["irreducible_tuples"].get<std::uint64_t>()),
                static_cast<unsigned long long>(s["irreducible_classes"].get<std::uint64_t>()));
  }
}

void print_table(const std::string& command, const json& payload) {
  if (command == "ell") {
    print_search_table(payload);
    return;
  }
  if (command == "monotonicity") {
    print_kv("embedding", payload["embedding"]);
    print_kv("both certified", payload["both_certified"]);
    print_kv("holds", payload["holds"]);
    std::printf("--- subring ---\n");
    print_search_table(payload["sub"]);
    std::printf("--- superring ---\n");
    print_search_table(payload["super"]);
    return;
  }
  if (command == "enumerate") {
    for (const auto& [key, value] : payload.items()) {
      if (key == "tuples") continue;
      if (key == "subset" && !value.is_null()) {
        print_kv(key, join_tuple(value));
        continue;
      }
      print_kv(key, value);
    }
    for (const auto& t : payload["tuples"]) std::printf("%s\n", join_tuple(t).c_str());
    return;
  }
  if (command == "classify") {
    for (const auto& [key, value] : payload.items()) {
      if (key == "per_size") continue;
      print_kv(key, value);
    }
    std::printf("%4s %9s %8s %6s\n", "n", "expected", "found", "pass");
    for (const auto& c : payload["per_size"]) {
      std::printf("%4llu %9llu %8llu %6s\n",
                  static_cast<unsigned long long>(c["n"].get<std::uint64_t>()),
                  static_cast<unsigned long long>(c["expected"].get<std::uint64_t>()),
                  static_cast<unsigned long long>(c["found"].get<std::uint64_t>()),
                  c["pass"].get<bool>() ? "yes" : "NO");
    }
    return;
  }
  // Generic flat rendering.
  for (const auto& [key, value] : payload.items()) {
    if (value.is_array() && !value.empty() && value[0].is_string() &&
        (key == "tuple" || key == "left" || key == "right" || key == "sum" ||
         key == "normal_form" || key == "subset" || key == "sign")) {
      print_kv(key, join_tuple(value));
    } else {
      print_kv(key, value);
    }
  }
}

// ---------------------------------------------------------------------------

struct CommandOutcome {
  std::string status = "ok";
  json payload;
  std::vector<std::string> diagnostics;
};

int emit_result(const GlobalOpts& g, const std::string& command,
                const CommandOutcome& out) {
  if (g.table) {
    std::printf("status: %s\n", out.status.c_str());
    if (!out.payload.is_null()) print_table(command, out.payload);
    for (const auto& d : out.diagnostics) std::printf("note: %s\n", d.c_str());
  } else {
    json envelope{
        {"status", out.status},
        {"payload", out.payload},
        {"diagnostics", out.diagnostics},
    };
    std::printf("%s\n", envelope.dump(2).c_str());
  }
  if (out.status == "error") return 1;
  if (out.status == "partial") return 2;
  return 0;
}

Ring make_ring(const GlobalOpts& g, const std::string& spec_text) {
  return build_ring(parse_ring_spec(spec_text), ring_config(g));
}

std::optional<SubsetR> make_subset(const Ring& ring, const std::string& subset_text) {
  if (subset_text.empty()) return std::nullopt;
  return validate_submagma(ring, parse_tuple(ring, subset_text));
}

json ring_payload(const Ring& ring) {
  const BoundsReport b = compute_bounds(ring);
  return json{
      {"ring", ring.name()},
      {"size", ring.size()},
      {"characteristic", ring.characteristic()},
      {"sl2_order", b.sl2_order},
      {"sl2_method", b.sl2_method},
      {"theta", b.theta},
      {"coset_bound", b.coset_bound ? json(*b.coset_bound) : json(nullptr)},
  };
}

json bounds_payload(const Ring& ring) {
  json out = bounds_to_json(compute_bounds(ring));
  out["ring"] = ring.name();
  return out;
}

json check_payload(const Ring& ring, const std::vector<Elem>& tuple,
                   const SubsetR* subset) {
  const auto sign = quiddity_sign(ring, tuple);
  json out{
      {"ring", ring.name()},
      {"tuple", tuple_to_json(ring, tuple)},
      {"quiddity", sign.has_value()},
      {"sign", sign_to_json(sign)},
      {"irreducible", nullptr},
      {"witness", nullptr},
  };
  if (sign) {
    if (tuple.size() < 3) {
      out["irreducible"] = false;  // (0,0) never counts as irreducible
    } else {
      auto witness = find_reduction_window(ring, tuple, subset);
      out["irreducible"] = !witness.has_value();
      if (witness) out["witness"] = witness_to_json(ring, *witness);
    }
  }
  return out;
}

CommandOutcome run_enumerate(const GlobalOpts& g, const Ring& ring, std::uint32_t n,
                             const std::string& mode, std::uint64_t limit,
                             const SubsetR* subset) {
  CommandOutcome out;
  json payload{
      {"ring", ring.name()},
      {"n", n},
      {"subset", subset ? tuple_to_json(ring, subset->members) : json(nullptr)},
      {"mode", mode},
  };
  const SearchOptions opts = search_options(g);
  bool exceeded = false;
  if (mode == "quiddities") {
    QuiddityEnum res = enumerate_quiddities(ring, n, opts, subset);
    exceeded = res.budget_exceeded;
    if (!exceeded) {
      payload["count"] = res.tuples.size();
      payload["class_count"] = nullptr;
      const std::uint64_t shown = std::min<std::uint64_t>(limit, res.tuples.size());
      res.tuples.resize(shown);
      payload["tuples"] = tuples_to_json(ring, res.tuples);
      payload["truncated"] = shown < payload["count"].get<std::uint64_t>();
    }
  } else {
    IrreducibleEnum res = enumerate_irreducible(ring, n, opts, subset);
    exceeded = res.budget_exceeded;
    if (!exceeded) {
      payload["count"] = res.raw_count;
      payload["class_count"] = res.normal_forms.size();
      const std::uint64_t shown = std::min<std::uint64_t>(limit, res.normal_forms.size());
      res.normal_forms.resize(shown);
      payload["tuples"] = tuples_to_json(ring, res.normal_forms);
      payload["truncated"] = shown < payload["class_count"].get<std::uint64_t>();
    }
  }
  if (exceeded) {
    payload["count"] = nullptr;
    payload["class_count"] = nullptr;
    payload["tuples"] = json::array();
    payload["truncated"] = false;
    out.status = "partial";
    out.diagnostics.push_back("node budget exhausted; results were discarded, not truncated");
  }
  payload["complete"] = !exceeded;
  out.payload = std::move(payload);
  return out;
}

json decompose_payload(const Ring& ring, const std::vector<Elem>& tuple,
                       const std::string& system_name, const SubsetR* subset,
                       std::vector<std::string>& diagnostics) {
  const CosetKind kind = system_name == "prime-subring" ? CosetKind::kPrimeSubring
                                                        : CosetKind::kUnitriangular;
  const CosetSystem system = build_coset_system(ring, kind);
  const DecomposeOutcome res = decompose_via_cosets(ring, tuple, system, subset);
  json out{
      {"ring", ring.name()},
      {"tuple", tuple_to_json(ring, tuple)},
      {"system", system_name},
      {"index", system.index()},
      {"threshold", res.threshold},
      {"guaranteed", res.guaranteed},
      {"collision", nullptr},
      {"witness", nullptr},
      {"verified", nullptr},
  };
  if (res.collision) {
    out["collision"] = json{{"i", res.collision->i}, {"j", res.collision->j}};
  }
  if (res.witness) {
    out["witness"] = witness_to_json(ring, *res.witness);
    out["verified"] = verify_witness(ring, tuple, *res.witness, subset);
  } else if (!res.guaranteed) {
    diagnostics.push_back("tuple is shorter than the collision threshold; "
                          "absence of a witness is inconclusive");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solutions of M(a_n)...M(a_1) = +-Id over finite commutative rings"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_flag("--table", g.table, "Plain-text output instead of JSON");
  app.add_option("--budget", g.budget, "Search node budget")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads")->capture_default_str();
  app.add_option("--table-threshold", g.table_threshold,
                 "Precompute operation tables up to this ring size")
      ->capture_default_str();
  app.add_option("--max-ring-size", g.max_ring_size, "Refuse rings larger than this")
      ->capture_default_str();
  app.add_option("--fixtures", g.fixtures, "Fixture directory for classify");

  std::string spec_text, tuple_text, left_text, right_text, subset_text;
  std::string mode = "irreducible", system_name = "unitriangular", super_text;
  std::uint32_t size_n = 0, max_n = 0;
  std::uint64_t limit = 100;

  CLI::App* cmd_ring = app.add_subcommand("ring", "Ring summary and size bounds");
  cmd_ring->add_option("spec", spec_text, "Ring spec, e.g. \"Z/2[x]/(x^2+x+1) x Z/3\"")
      ->required();

  CLI::App* cmd_bounds = app.add_subcommand("bounds", "Size bounds for irreducible solutions");
  cmd_bounds->add_option("spec", spec_text, "Ring spec")->required();

  CLI::App* cmd_check = app.add_subcommand("check", "Test a tuple: solution? irreducible?");
  cmd_check->add_option("spec", spec_text, "Ring spec")->required();
  cmd_check->add_option("tuple", tuple_text, "Tuple literal, e.g. \"[1, 2, 1, 2]\"")
      ->required();
  cmd_check->add_option("--subset", subset_text, "Restrict entries/borders to a submagma");

  CLI::App* cmd_enum = app.add_subcommand("enumerate", "List solutions of one size");
  cmd_enum->add_option("spec", spec_text, "Ring spec")->required();
  cmd_enum->add_option("-n,--size", size_n, "Tuple size")->required();
  cmd_enum->add_option("--mode", mode, "quiddities | irreducible")
      ->check(CLI::IsMember({"quiddities", "irreducible"}))
      ->capture_default_str();
  cmd_enum->add_option("--limit", limit, "Max tuples to list")->capture_default_str();
  cmd_enum->add_option("--subset", subset_text, "Restrict to a submagma");

  CLI::App* cmd_ell = app.add_subcommand("ell", "Scan sizes for irreducible solutions");
  cmd_ell->add_option("spec", spec_text, "Ring spec")->required();
  cmd_ell->add_option("--max-n", max_n, "Largest size to scan")->required();
  cmd_ell->add_option("--subset", subset_text, "Restrict to a submagma");

  CLI::App* cmd_dec = app.add_subcommand("decompose", "Split a long solution via cosets");
  cmd_dec->add_option("spec", spec_text, "Ring spec")->required();
  cmd_dec->add_option("tuple", tuple_text, "Solution tuple")->required();
  cmd_dec->add_option("--system", system_name, "unitriangular | prime-subring")
      ->check(CLI::IsMember({"unitriangular", "prime-subring"}))
      ->capture_default_str();
  cmd_dec->add_option("--subset", subset_text, "Restrict to a submagma");

  CLI::App* cmd_sum = app.add_subcommand("sum", "Combine two tuples");
  cmd_sum->add_option("spec", spec_text, "Ring spec")->required();
  cmd_sum->add_option("left", left_text, "Left tuple")->required();
  cmd_sum->add_option("right", right_text, "Right tuple")->required();

  CLI::App* cmd_norm = app.add_subcommand("normalize", "Canonical class representative");
  cmd_norm->add_option("spec", spec_text, "Ring spec")->required();
  cmd_norm->add_option("tuple", tuple_text, "Tuple literal")->required();

  CLI::App* cmd_classify =
      app.add_subcommand("classify", "Compare search results against stored references");
  cmd_classify->add_option("spec", spec_text, "Ring spec")->required();

  CLI::App* cmd_mono =
      app.add_subcommand("monotonicity", "Compare max irreducible sizes along an embedding");
  cmd_mono->add_option("sub", spec_text, "Subring spec (Z/p)")->required();
  cmd_mono->add_option("super", super_text, "Superring spec (Z/p[x]/(f))")->required();
  cmd_mono->add_option("--max-n", max_n, "Largest size to scan on both sides")->required();

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  CommandOutcome out;
  try {
    if (command == "ring") {
      out.payload = ring_payload(make_ring(g, spec_text));
    } else if (command == "bounds") {
      out.payload = bounds_payload(make_ring(g, spec_text));
    } else if (command == "check") {
      Ring ring = make_ring(g, spec_text);
      auto subset = make_subset(ring, subset_text);
      out.payload = check_payload(ring, parse_tuple(ring, tuple_text),
                                  subset ? &*subset : nullptr);
    } else if (command == "enumerate") {
      Ring ring = make_ring(g, spec_text);
      auto subset = make_subset(ring, subset_text);
      out = run_enumerate(g, ring, size_n, mode, limit, subset ? &*subset : nullptr);
    } else if (command == "ell") {
      Ring ring = make_ring(g, spec_text);
      auto subset = make_subset(ring, subset_text);
      SearchReport rep = ell_search(ring, max_n, search_options(g),
                                    subset ? &*subset : nullptr);
      out.payload = search_report_to_json(rep);
      if (rep.budget_exceeded) {
        out.status = "partial";
        out.diagnostics.push_back("node budget exhausted after size " +
                                  std::to_string(rep.verified_up_to));
      }
      if (!rep.certified_complete) {
        out.diagnostics.push_back(
            "not certified: sizes up to " + std::to_string(rep.bound_used) +
            " must be scanned to pin down the maximum");
      }
    } else if (command == "decompose") {
      Ring ring = make_ring(g, spec_text);
      auto subset = make_subset(ring, subset_text);
      out.payload = decompose_payload(ring, parse_tuple(ring, tuple_text), system_name,
                                      subset ? &*subset : nullptr, out.diagnostics);
    } else if (command == "sum") {
      Ring ring = make_ring(g, spec_text);
      const auto left = parse_tuple(ring, left_text);
      const auto right = parse_tuple(ring, right_text);
      out.payload = json{
          {"ring", ring.name()},
          {"left", tuple_to_json(ring, left)},
          {"right", tuple_to_json(ring, right)},
          {"sum", tuple_to_json(ring, sum_oplus(ring, left, right))},
      };
    } else if (command == "normalize") {
      Ring ring = make_ring(g, spec_text);
      const auto tuple = parse_tuple(ring, tuple_text);
      out.payload = json{
          {"ring", ring.name()},
          {"tuple", tuple_to_json(ring, tuple)},
          {"normal_form", tuple_to_json(ring, dihedral_normal_form(tuple))},
      };
    } else if (command == "classify") {
      Ring ring = make_ring(g, spec_text);
      std::string dir = g.fixtures.empty() ? data_root() + "/fixtures/v1" : g.fixtures;
      ClassifyReport rep = classify_against_fixture(ring, dir, search_options(g));
      out.payload = classify_report_to_json(rep);
      if (rep.budget_exceeded) {
        out.status = "partial";
        out.diagnostics.push_back("node budget exhausted mid-scan");
      }
    } else if (command == "monotonicity") {
      MonotonicityReport rep = monotonicity_check(
          parse_ring_spec(spec_text), parse_ring_spec(super_text), max_n,
          search_options(g), ring_config(g));
      out.payload = monotonicity_report_to_json(rep);
      if (rep.sub_report.budget_exceeded || rep.super_report.budget_exceeded) {
        out.status = "partial";
        out.diagnostics.push_back("node budget exhausted on at least one side");
      }
      if (!rep.both_certified) {
        out.diagnostics.push_back("comparison withheld: both searches must be certified");
      }
    }
  } catch (const std::exception& e) {
    out.status = "error";
    out.payload = nullptr;
    out.diagnostics = {e.what()};
  }
  return emit_result(g, command, out);
}
