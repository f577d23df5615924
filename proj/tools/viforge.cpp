#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "viforge/capacitated.hpp"
#include "viforge/coloring.hpp"
#include "viforge/common_subgraph.hpp"
#include "viforge/errors.hpp"
#include "viforge/imbalance.hpp"
#include "viforge/instance_io.hpp"
#include "viforge/oracles.hpp"
#include "viforge/parallel.hpp"
#include "viforge/poly_cases.hpp"
#include "viforge/reductions.hpp"
#include "viforge/types.hpp"
#include "viforge/vertex_integrity.hpp"

using nlohmann::json;
using namespace viforge;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

const std::vector<std::string> kSolveProblems = {"imbalance", "mcs",  "mcis", "cvc",
                                                 "cds",       "prece", "eqcol", "ecp",
                                                 "motif",     "mmoo", "sf",   "usf"};
const std::vector<std::string> kOracleOnly = {"vi", "td", "vc", "bandwidth", "bp", "partition", "3dm"};

struct Outcome {
  bool yes = false;
  std::optional<std::int64_t> value;
  json certificate;  // null when the answer is no
};

int files_needed(const std::string& problem) { return problem == "mcs" || problem == "mcis" ? 2 : 1; }

bool needs_r(const std::string& problem) {
  return problem == "prece" || problem == "eqcol" || problem == "ecp" || problem == "mmoo";
}

std::int64_t resolve_r(const std::string& problem, const InstanceFile& inst,
                       std::optional<std::int64_t> flag) {
  if (flag) return *flag;
  if (inst.r) return *inst.r;
  throw InputError(problem + " needs --r or an 'r' line in the instance");
}

int as_int_r(std::int64_t r) {
  if (r < 0 || r > 1'000'000) throw InputError("r out of range");
  return static_cast<int>(r);
}

Coloring precolor_of(const InstanceFile& inst) {
  return inst.precolor.empty() ? Coloring(inst.graph.order(), 0) : inst.precolor;
}

json witness_json(const CommonSubgraphWitness& w) { return {{"mapping", w.mapping}, {"value", w.value}}; }

json steiner_json(const SteinerSolution& s) { return {{"weight", s.weight}, {"edges", s.edges}}; }

Outcome optional_outcome(const auto& result, auto to_json, auto value_of) {
  Outcome out;
  if (!result) return out;
  out.yes = true;
  out.certificate = to_json(*result);
  out.value = value_of(*result);
  return out;
}

Outcome run_problem(const std::string& problem, const std::vector<InstanceFile>& inst,
                    std::optional<std::int64_t> r_flag, bool use_oracle) {
  const Graph& g = inst[0].graph;
  const auto budget = oracle::OracleBudget::from_env();
  if (problem == "imbalance") {
    LinearOrdering order;
    std::int64_t value = 0;
    if (use_oracle) {
      std::tie(value, order) = oracle::imbalance(g, budget);
    } else {
      auto res = imbalance_vi(g);
      value = res.value;
      order = res.ordering;
    }
    return {true, value, json{{"ordering", order}, {"value", value}}};
  }
  if (problem == "mcs" || problem == "mcis") {
    const Graph& h = inst[1].graph;
    CommonSubgraphWitness w;
    if (problem == "mcs") {
      w = use_oracle ? oracle::mcs(g, h, budget) : mcs_vi(g, h);
    } else {
      w = use_oracle ? oracle::mcis(g, h, budget) : mcis_vi(g, h);
    }
    return {true, w.value, witness_json(w)};
  }
  if (problem == "cvc") {
    auto res = use_oracle ? oracle::cvc(g, budget) : cvc_vi(g);
    return optional_outcome(
        res, [](const auto& w) { return json{{"cover", w.cover}, {"assignment", w.assignment}}; },
        [](const auto& w) { return static_cast<std::int64_t>(w.cover.size()); });
  }
  if (problem == "cds") {
    auto w = use_oracle ? oracle::cds(g, budget) : cds_vi(g);
    return {true, static_cast<std::int64_t>(w.dset.size()),
            json{{"dset", w.dset}, {"assignment", w.assignment}}};
  }
  if (problem == "prece" || problem == "eqcol") {
    const int r = as_int_r(resolve_r(problem, inst[0], r_flag));
    std::optional<Coloring> res;
    if (problem == "prece") {
      const Coloring pre = precolor_of(inst[0]);
      res = use_oracle ? oracle::precoloring(g, pre, r, budget) : precoloring_extension_vi(g, pre, r);
    } else {
      res = use_oracle ? oracle::eqcoloring(g, r, budget) : equitable_coloring_vi(g, r);
    }
    return optional_outcome(
        res, [](const Coloring& c) { return json{{"coloring", c}}; },
        [](const Coloring&) { return std::optional<std::int64_t>{}; });
  }
  if (problem == "ecp") {
    const int r = as_int_r(resolve_r(problem, inst[0], r_flag));
    auto res = use_oracle ? oracle::ecp(g, r, budget) : equitable_connected_partition_vi(g, r);
    return optional_outcome(
        res, [](const Partition& p) { return json{{"partition", p}}; },
        [](const Partition&) { return std::optional<std::int64_t>{}; });
  }
  if (problem == "motif") {
    const auto m = as_motif(inst[0]);
    auto res = use_oracle ? oracle::motif(m, budget) : graph_motif_vi3(m);
    return optional_outcome(
        res, [](const VertexSubset& s) { return json{{"vertices", s}}; },
        [](const VertexSubset&) { return std::optional<std::int64_t>{}; });
  }
  if (problem == "mmoo") {
    MmooInstance m{g, resolve_r(problem, inst[0], r_flag)};
    auto res = use_oracle ? oracle::mmoo(m, budget) : binary_mmoo_vc2(m);
    return optional_outcome(
        res, [](const Orientation& o) { return json{{"orientation", o}}; },
        [](const Orientation&) { return std::optional<std::int64_t>{}; });
  }
  if (problem == "sf" || problem == "usf") {
    const auto si = as_steiner(inst[0]);
    std::optional<SteinerSolution> res;
    if (problem == "sf") {
      res = use_oracle ? oracle::steiner_forest(si, budget) : steiner_forest_xp_vc(si);
    } else {
      res = use_oracle ? oracle::usf(si, budget) : usf_solve(si);
    }
    return optional_outcome(res, steiner_json, [](const SteinerSolution& s) { return s.weight; });
  }
  if (!use_oracle) throw InputError("unknown problem '" + problem + "'");
  if (problem == "vi") {
    const int k = oracle::vertex_integrity(g, budget);
    return {true, k, json{{"value", k}}};
  }
  if (problem == "td") {
    const int k = oracle::treedepth(g, budget);
    return {true, k, json{{"value", k}}};
  }
  if (problem == "vc") {
    const int k = oracle::vertex_cover_number(g, budget);
    return {true, k, json{{"value", k}}};
  }
  if (problem == "bandwidth") {
    auto [w, order] = oracle::bandwidth(g, budget);
    return {true, w, json{{"ordering", order}, {"value", w}}};
  }
  if (problem == "bp") {
    auto res = oracle::bin_packing(as_bin_packing(inst[0]), budget);
    return optional_outcome(
        res, [](const auto& bins) { return json{{"bins", bins}}; },
        [](const auto&) { return std::optional<std::int64_t>{}; });
  }
  if (problem == "partition") {
    auto res = oracle::partition(inst[0].items, budget);
    return optional_outcome(
        res, [](const auto& half) { return json{{"half", half}}; },
        [](const auto&) { return std::optional<std::int64_t>{}; });
  }
  if (problem == "3dm") {
    auto res = oracle::three_dm(as_three_dm(inst[0]), budget);
    return optional_outcome(
        res, [](const auto& chosen) { return json{{"triples", chosen}}; },
        [](const auto&) { return std::optional<std::int64_t>{}; });
  }
  throw InputError("unknown problem '" + problem + "'");
}

oracle::Verdict verify_problem(const std::string& problem, const std::vector<InstanceFile>& inst,
                               std::optional<std::int64_t> r, const json& cert) {
  const Graph& g = inst[0].graph;
  auto need_r = [&] {
    if (!r) throw InputError(problem + " needs --r, an 'r' line or a recorded r");
    return as_int_r(*r);
  };
  if (problem == "imbalance") {
    const auto order = cert.at("ordering").get<LinearOrdering>();
    if (order.size() != static_cast<std::size_t>(g.order())) return {false, "ordering has wrong length"};
    const auto value = cert.contains("value") ? cert["value"].get<std::int64_t>() : imbalance_of(g, order);
    return oracle::verify_imbalance(g, order, value);
  }
  if (problem == "mcs" || problem == "mcis") {
    CommonSubgraphWitness w{cert.at("mapping").get<std::vector<Vertex>>(), cert.at("value").get<int>()};
    const Graph& h = inst[1].graph;
    return problem == "mcs" ? oracle::verify_mcs(g, h, w) : oracle::verify_mcis(g, h, w);
  }
  if (problem == "cvc") {
    return oracle::verify_cvc(g, {cert.at("cover").get<VertexSubset>(),
                                  cert.at("assignment").get<std::vector<Vertex>>()});
  }
  if (problem == "cds") {
    return oracle::verify_cds(g, {cert.at("dset").get<VertexSubset>(),
                                  cert.at("assignment").get<std::vector<Vertex>>()});
  }
  if (problem == "prece") {
    return oracle::verify_precoloring(g, precolor_of(inst[0]), need_r(),
                                      cert.at("coloring").get<Coloring>());
  }
  if (problem == "eqcol") return oracle::verify_eqcoloring(g, need_r(), cert.at("coloring").get<Coloring>());
  if (problem == "ecp") return oracle::verify_ecp(g, need_r(), cert.at("partition").get<Partition>());
  if (problem == "motif") return oracle::verify_motif(as_motif(inst[0]), cert.at("vertices").get<VertexSubset>());
  if (problem == "mmoo") {
    need_r();
    return oracle::verify_mmoo({g, *r}, cert.at("orientation").get<Orientation>());
  }
  if (problem == "sf" || problem == "usf") {
    SteinerSolution sol{cert.at("weight").get<std::int64_t>(), cert.at("edges").get<std::vector<int>>()};
    return oracle::verify_steiner_forest(as_steiner(inst[0]), sol);
  }
  throw InputError("no verifier for problem '" + problem + "'");
}

json parameter_report(const std::vector<InstanceFile>& inst) {
  json report = json::object();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const std::string suffix = i == 0 ? "" : std::to_string(i + 1);
    const auto vi = vertex_integrity(inst[i].graph);
    report["vi" + suffix] = vi.k;
    report["vc" + suffix] = vertex_cover_min(inst[i].graph).size();
    report["separator" + suffix] = vi.separator;
  }
  return report;
}

std::string instances_hash(const std::vector<InstanceFile>& inst) {
  std::string text;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (i) text += "--\n";
    text += serialize_instance(inst[i]);
  }
  return hash_hex(fnv1a(text));
}

std::vector<InstanceFile> load_all(const std::vector<std::string>& paths) {
  std::vector<InstanceFile> out;
  for (const auto& p : paths) out.push_back(parse_instance_file(p));
  return out;
}

void check_arity(const std::string& problem, std::size_t got) {
  const int want = files_needed(problem);
  if (static_cast<int>(got) != want) {
    throw InputError(problem + " takes " + std::to_string(want) + " instance file(s)");
  }
}

int emit_outcome(const std::string& problem, const std::vector<InstanceFile>& inst,
                 std::optional<std::int64_t> r_flag, bool use_oracle, bool full_record) {
  const auto start = std::chrono::steady_clock::now();
  const Outcome out = run_problem(problem, inst, r_flag, use_oracle);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (full_record) {
    json params = parameter_report(inst);
    if (needs_r(problem)) params["r"] = resolve_r(problem, inst[0], r_flag);
    params["threads"] = thread_count();
    json rec = {{"problem", problem},
                {"instance_hash", instances_hash(inst)},
                {"answer", out.yes ? "yes" : "no"},
                {"value", out.value ? json(*out.value) : json(nullptr)},
                {"certificate", out.certificate},
                {"wall_time_ms", ms},
                {"parameters", params},
                {"solver", use_oracle ? "oracle" : "fpt"}};
    std::cout << rec.dump() << '\n';
  } else {
    json brief = out.certificate.is_null() ? json::object() : out.certificate;
    brief["answer"] = out.yes ? "yes" : "no";
    if (out.value) brief["value"] = *out.value;
    std::cout << brief.dump() << '\n';
  }
  return out.yes ? kExitYes : kExitNo;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f || !(f << text)) throw InputError("cannot write " + path);
}

json reduce_source(const std::string& name, const InstanceFile& src, bool drop_full, InstanceFile& out) {
  if (name == "bp-mmoo" || name == "partition-mmoo") {
    const MmooReduction red = name == "bp-mmoo"
                                  ? reduce_bp_to_unary_mmoo(as_bin_packing(src), {drop_full})
                                  : reduce_partition_to_binary_mmoo(src.items);
    out = from_mmoo(red.instance);
    return {{"u", red.u},           {"bins", red.bins},         {"items", red.items},
            {"weights", red.weights}, {"capacity", red.capacity}, {"target", red.target},
            {"cover", red.cover}};
  }
  if (name == "bp-bandwidth") {
    const BandwidthReduction red = reduce_bp_to_bandwidth(as_bin_packing(src));
    out = InstanceFile{};
    out.graph = red.tree;
    out.r = red.width;
    return {{"width", red.width},
            {"t", red.t},
            {"n", red.n},
            {"capacity", red.capacity},
            {"spine", red.spine},
            {"star_centers", red.star_centers},
            {"spine_leaves", red.spine_leaves},
            {"star_leaves", red.star_leaves},
            {"connector_inner", red.connector_inner},
            {"treedepth_bound", red.treedepth_bound}};
  }
  if (name == "3dm-motif") {
    const MotifReduction red = reduce_3dm_to_colorful_motif(as_three_dm(src));
    out = from_motif(red.instance);
    std::vector<std::vector<Vertex>> triples;
    for (const auto& t : red.triple_vertices) triples.push_back({t[0], t[1], t[2]});
    return {{"root", red.root},
            {"witness", {{"separator", red.witness.separator}, {"k", red.witness.k}}},
            {"triple_vertices", triples}};
  }
  throw InputError("unknown reduction '" + name + "' (bp-mmoo, partition-mmoo, bp-bandwidth, 3dm-motif)");
}

json params_of(const InstanceFile& inst) {
  const Graph& g = inst.graph;
  const ViSet vi = vertex_integrity(g);
  const VertexSubset vc = vertex_cover_min(g);
  const TypeTable table = classify(g, vi.separator);
  json types = json::array();
  for (const auto& cls : table.classes) {
    types.push_back({{"code", cls.type.hex()}, {"size", cls.type.size}, {"count", cls.count()}});
  }
  return {{"n", g.order()},
          {"m", g.size()},
          {"vi", vi.k},
          {"separator", vi.separator},
          {"vc", vc.size()},
          {"cover", vc},
          {"components", table.total_components()},
          {"types", types}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"viforge: vertex-integrity parameterized solvers, oracles and reductions"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker budget for guess loops")->check(CLI::Range(1, 256));

  std::string problem, name, kind, out_path, source_kind = "bp";
  std::vector<std::string> files;
  std::optional<std::int64_t> r;
  bool as_json = false, drop_full = false;
  GenerateOptions gen;
  SourceOptions src;

  auto problem_list = kSolveProblems;
  auto oracle_list = kSolveProblems;
  oracle_list.insert(oracle_list.end(), kOracleOnly.begin(), kOracleOnly.end());

  auto* solve = app.add_subcommand("solve", "run the parameterized solver");
  solve->add_option("problem", problem)->required()->check(CLI::IsMember(problem_list));
  solve->add_option("files", files, "instance file(s)")->required();
  solve->add_option("--r", r, "target r (colors, parts or MMOO bound)");
  solve->add_flag("--json", as_json, "emit a full result record");

  auto* orc = app.add_subcommand("oracle", "run the brute-force oracle");
  orc->add_option("problem", problem)->required()->check(CLI::IsMember(oracle_list));
  orc->add_option("files", files, "instance file(s)")->required();
  orc->add_option("--r", r, "target r");
  orc->add_flag("--json", as_json, "emit a full result record");

  auto* reduce = app.add_subcommand("reduce", "build a reduction instance from a source file");
  reduce->add_option("name", name)->required()->check(
      CLI::IsMember({"bp-mmoo", "partition-mmoo", "bp-bandwidth", "3dm-motif"}));
  reduce->add_option("source", files, "source instance")->required()->expected(1);
  reduce->add_option("--out", out_path, "instance output path");
  reduce->add_flag("--drop-full-items", drop_full, "bp-mmoo: drop items equal to B with one bin");

  auto* gen_cmd = app.add_subcommand("gen", "generate a seeded instance");
  gen_cmd->add_option("kind", kind)->required()->check(
      CLI::IsMember({"random-vi", "random-vc", "reduction-source"}));
  gen_cmd->add_option("--n", gen.n, "vertices (or items / ground set size)");
  gen_cmd->add_option("--k", gen.k, "vi bound or cover size");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--density", gen.density, "edge percentage")->check(CLI::Range(0, 100));
  gen_cmd->add_option("--colors", gen.colors, "palette size");
  gen_cmd->add_option("--max-weight", gen.max_weight, "edge weights in 1..w");
  gen_cmd->add_flag("--capacities", gen.capacities, "capacities in 1..deg");
  gen_cmd->add_option("--terminal-sets", gen.terminal_sets, "terminal pairs");
  gen_cmd->add_option("--source", source_kind, "bp, partition or 3dm")->check(
      CLI::IsMember({"bp", "partition", "3dm"}));
  gen_cmd->add_option("--t", src.t, "bins");
  gen_cmd->add_option("--max-item", src.max_item);
  gen_cmd->add_option("--triples", src.triples);
  gen_cmd->add_option("--out", out_path);

  auto* params = app.add_subcommand("params", "report vi, vc and component types");
  params->add_option("file", files)->required()->expected(1);

  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("problem", problem)->required()->check(CLI::IsMember(problem_list));
  verify->add_option("files", files, "instance file(s) then the certificate")->required();
  verify->add_option("--r", r, "target r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    set_thread_count(threads);
    if (*solve || *orc) {
      check_arity(problem, files.size());
      return emit_outcome(problem, load_all(files), r, orc->parsed(), as_json);
    }
    if (*reduce) {
      InstanceFile out;
      json meta = reduce_source(name, parse_instance_file(files[0]), drop_full, out);
      meta["reduction"] = name;
      meta["instance_hash"] = hash_hex(instance_hash(out));
      if (out_path.empty()) {
        meta["instance"] = serialize_instance(out);
      } else {
        write_text(out_path, serialize_instance(out));
      }
      std::cout << meta.dump() << '\n';
      return kExitYes;
    }
    if (*gen_cmd) {
      InstanceFile inst;
      if (kind == "random-vi") {
        inst = generate_random_vi(gen);
      } else if (kind == "random-vc") {
        inst = generate_random_vc(gen);
      } else {
        src.kind = source_kind;
        src.n = gen.n;
        src.seed = gen.seed;
        inst = generate_reduction_source(src);
      }
      write_text(out_path, serialize_instance(inst));
      return kExitYes;
    }
    if (*params) {
      std::cout << params_of(parse_instance_file(files[0])).dump() << '\n';
      return kExitYes;
    }
    if (*verify) {
      if (files.size() < 2) throw InputError("verify takes instance file(s) and a certificate");
      const std::string cert_path = files.back();
      files.pop_back();
      check_arity(problem, files.size());
      const auto inst = load_all(files);
      std::ifstream in(cert_path);
      if (!in) throw InputError("cannot read " + cert_path);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw InputError(std::string("certificate is not JSON: ") + e.what());
      }
      json cert = doc;
      if (doc.contains("certificate")) {
        cert = doc["certificate"];
        if (!r && doc.contains("parameters") && doc["parameters"].contains("r")) {
          r = doc["parameters"]["r"].get<std::int64_t>();
        }
      }
      if (cert.is_null()) {
        std::cerr << "no certificate to verify (answer was no)\n";
        return kExitNo;
      }
      if (!r && inst[0].r) r = inst[0].r;
      oracle::Verdict verdict;
      try {
        verdict = verify_problem(problem, inst, r, cert);
      } catch (const json::exception& e) {
        verdict = {false, std::string("malformed certificate: ") + e.what()};
      }
      std::cout << json{{"ok", verdict.ok}, {"diagnostic", verdict.diagnostic}}.dump() << '\n';
      return verdict.ok ? kExitYes : kExitNo;
    }
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
