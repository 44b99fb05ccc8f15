// ggdp — General Grundy Domination toolkit.
//
// Subcommands: gen, solve, closed-form, model, count, poly, separate,
// root-bound, reduce.  Reports are line-oriented `key: value`; --json
// switches to a single structured object.  `-` reads the instance from
// stdin.  GGDP_BUDGET overrides the solver node budget (see --budget).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ggdp/closedform.hpp"
#include "ggdp/graph.hpp"
#include "ggdp/lp.hpp"
#include "ggdp/model.hpp"
#include "ggdp/polytope.hpp"
#include "ggdp/separation.hpp"
#include "ggdp/sequence.hpp"

namespace {

using nlohmann::json;

struct Report {
  bool as_json = false;
  json obj = json::object();

  void kv(const std::string& key, const std::string& val) {
    if (as_json)
      obj[key] = val;
    else
      std::cout << key << ": " << val << "\n";
  }
  void kv(const std::string& key, long long val) {
    if (as_json)
      obj[key] = val;
    else
      std::cout << key << ": " << val << "\n";
  }
  void kv(const std::string& key, double val) {
    if (as_json) {
      obj[key] = val;
    } else {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6f", val);
      std::cout << key << ": " << buf << "\n";
    }
  }
  void kv(const std::string& key, const std::vector<int>& vals) {
    if (as_json) {
      obj[key] = vals;
    } else {
      std::cout << key << ":";
      for (int v : vals) std::cout << ' ' << v;
      std::cout << "\n";
    }
  }
  void list(const std::string& key, const std::string& val) {
    if (as_json)
      obj[key].push_back(val);
    else
      std::cout << key << ": " << val << "\n";
  }
  void flush() {
    if (as_json) std::cout << obj.dump(2) << "\n";
  }
};

std::string read_stream_or_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ggdp::Instance load_instance(const std::string& path) {
  return ggdp::parse_instance(read_stream_or_file(path));
}

// C specification: "empty", "all", or a comma-separated vertex list.
// For paths/random instances the labels are 1-based; for webs they are the
// 0-based circulant labels used by the closed forms.
ggdp::VertexSet parse_cset(const std::string& text, int n, bool zero_based) {
  if (text == "empty") return 0;
  if (text == "all")
    return zero_based ? (ggdp::vs_all(n) >> 1) : ggdp::vs_all(n);
  ggdp::VertexSet out = 0;
  std::istringstream ss(text);
  std::string item;
  const int lo = zero_based ? 0 : 1;
  const int hi = zero_based ? n - 1 : n;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    int v = std::stoi(item);
    if (v < lo || v > hi)
      throw std::runtime_error("C member " + item + " out of range");
    out |= ggdp::vbit(v);
  }
  return out;
}

ggdp::FractionalPoint load_point(const std::string& path, int n, int m) {
  ggdp::FractionalPoint pt(n, m);
  std::istringstream in(read_stream_or_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    int a = 0, i = 0;
    double val = 0.0;
    if ((kind != "x" && kind != "y") || !(ls >> a >> i >> val))
      throw std::runtime_error("point file line " + std::to_string(lineno) +
                               ": expected `x|y <vertex> <step> <value>`");
    if (a < 1 || a > n || i < 1 || i > m)
      throw std::runtime_error("point file line " + std::to_string(lineno) +
                               ": index out of range");
    if (kind == "x")
      pt.set_x(a, i, val);
    else
      pt.set_y(a, i, val);
  }
  return pt;
}

std::uint64_t resolve_budget(std::optional<std::uint64_t> flag) {
  return flag ? *flag : ggdp::budget_from_env();
}

void emit_instance(const ggdp::Instance& inst, const std::string& out_path) {
  const std::string text = ggdp::write_instance(inst);
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write file: " + out_path);
    out << text;
  }
}

int default_lb(const ggdp::Instance& inst) {
  return static_cast<int>(ggdp::greedy_sequence(inst).vertices.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"General Grundy Domination toolkit"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "structured JSON output");

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  int gen_n = 0, gen_k = 1, gen_retries = 1000;
  double gen_p = 0.5;
  std::string gen_c = "all", gen_out;
  std::uint64_t gen_seed = 1;
  auto* gen_path_cmd = gen->add_subcommand("path", "path P_n");
  gen_path_cmd->add_option("-n", gen_n, "vertices")->required();
  gen_path_cmd->add_option("-C", gen_c, "empty|all|v1,v2,... (1-based)");
  gen_path_cmd->add_option("-o", gen_out, "output file (default stdout)");
  auto* gen_web_cmd = gen->add_subcommand("web", "web graph W_n^k");
  gen_web_cmd->add_option("-n", gen_n, "vertices")->required();
  gen_web_cmd->add_option("-k", gen_k, "neighbors per side")->required();
  gen_web_cmd->add_option("-C", gen_c, "empty|all|l1,l2,... (0-based labels)");
  gen_web_cmd->add_option("-o", gen_out, "output file (default stdout)");
  auto* gen_rand_cmd =
      gen->add_subcommand("random", "connected twin-free G(n,p)");
  gen_rand_cmd->add_option("-n", gen_n, "vertices")->required();
  gen_rand_cmd->add_option("-p", gen_p, "edge probability");
  gen_rand_cmd->add_option("-C", gen_c, "empty|all|half");
  gen_rand_cmd->add_option("--seed", gen_seed, "RNG seed");
  gen_rand_cmd->add_option("--retries", gen_retries, "resample budget");
  gen_rand_cmd->add_option("-o", gen_out, "output file (default stdout)");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "compute gamma_gr");
  std::string solve_file;
  bool solve_exact = false, solve_greedy = false;
  std::optional<std::uint64_t> solve_budget;
  solve->add_option("file", solve_file, "instance file or -")->required();
  solve->add_flag("--exact", solve_exact, "exact value (default)");
  solve->add_flag("--greedy", solve_greedy, "greedy lower bound only");
  solve->add_option("--budget", solve_budget, "solver node budget");

  // ---- closed-form ----
  auto* cf = app.add_subcommand("closed-form", "closed-form gamma_gr");
  cf->require_subcommand(1);
  int cf_n = 0, cf_k = 1;
  std::string cf_c = "all";
  auto* cf_path = cf->add_subcommand("path", "paths");
  cf_path->add_option("-n", cf_n, "vertices")->required();
  cf_path->add_option("-C", cf_c, "empty|all|v1,v2,... (1-based)");
  auto* cf_web = cf->add_subcommand("web", "webs");
  cf_web->add_option("-n", cf_n, "vertices")->required();
  cf_web->add_option("-k", cf_k, "neighbors per side")->required();
  cf_web->add_option("-C", cf_c, "empty|all|l1,l2,... (0-based labels)");

  // ---- model / count ----
  auto* model_cmd = app.add_subcommand("model", "build a formulation");
  std::string model_file, model_form = "F1", model_export;
  std::optional<int> model_lb;
  model_cmd->add_option("file", model_file, "instance file or -")->required();
  model_cmd->add_option("--form", model_form, "F1..F8");
  model_cmd->add_option("--lb", model_lb, "LB (default: greedy length)");
  model_cmd->add_option("--export", model_export, "write LP file (- = stdout)");

  auto* count_cmd = app.add_subcommand("count", "count feasible 0/1 points");
  std::string count_file, count_form = "F1";
  std::optional<int> count_lb;
  count_cmd->add_option("file", count_file, "instance file or -")->required();
  count_cmd->add_option("--form", count_form, "F1..F8");
  count_cmd->add_option("--lb", count_lb, "LB (default: greedy length)");

  // ---- poly ----
  auto* poly = app.add_subcommand("poly", "polytope studies");
  poly->require_subcommand(1);
  std::string poly_file, poly_form = "F1", poly_ineq;
  auto* poly_dim = poly->add_subcommand("dim", "cloud affine dimension");
  poly_dim->add_option("file", poly_file, "instance file or -")->required();
  poly_dim->add_option("--form", poly_form, "F1|F3");
  auto* poly_check = poly->add_subcommand("check", "validity/facet check");
  poly_check->add_option("file", poly_file, "instance file or -")->required();
  poly_check->add_option("--ineq", poly_ineq, "inequality spec")->required();
  auto* poly_audit = poly->add_subcommand("audit", "predict-vs-check sweep");
  poly_audit->add_option("file", poly_file, "instance file or -")->required();

  // ---- separate ----
  auto* sep = app.add_subcommand("separate", "run cut separation");
  std::string sep_file, sep_point;
  bool sep_t1 = false, sep_t2 = false;
  sep->add_option("file", sep_file, "instance file or -")->required();
  sep->add_option("--point", sep_point, "fractional point file")->required();
  sep->add_flag("--type1", sep_t1, "Type I only unless --type2 also given");
  sep->add_flag("--type2", sep_t2, "Type II only unless --type1 also given");

  // ---- root-bound ----
  auto* root = app.add_subcommand("root-bound", "root cutting-plane loop");
  std::string root_file, root_form = "F1", root_cuts = "type1,type2";
  int root_rounds = 10;
  std::optional<int> root_lb;
  root->add_option("file", root_file, "instance file or -")->required();
  root->add_option("--form", root_form, "F1..F8");
  root->add_option("--rounds", root_rounds, "max separation rounds");
  root->add_option("--cuts", root_cuts, "type1,type2 subset");
  root->add_option("--lb", root_lb, "LB (default 1)");

  // ---- reduce ----
  auto* reduce = app.add_subcommand("reduce", "remove twin vertices");
  std::string reduce_file, reduce_out;
  reduce->add_option("file", reduce_file, "instance file or -")->required();
  reduce->add_option("-o", reduce_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;  // unknown flag/subcommand or bad usage
  }

  Report rep;
  rep.as_json = as_json;

  try {
    if (gen->parsed()) {
      ggdp::Instance inst;
      if (gen_path_cmd->parsed()) {
        inst = ggdp::gen_path(gen_n, parse_cset(gen_c, gen_n, false));
      } else if (gen_web_cmd->parsed()) {
        inst = ggdp::gen_web(gen_n, gen_k, parse_cset(gen_c, gen_n, true));
      } else {
        ggdp::CMode mode = ggdp::CMode::All;
        if (gen_c == "empty") mode = ggdp::CMode::Empty;
        else if (gen_c == "all") mode = ggdp::CMode::All;
        else if (gen_c == "half") mode = ggdp::CMode::Half;
        else throw std::runtime_error("random -C must be empty|all|half");
        inst = ggdp::gen_random(gen_n, gen_p, mode, gen_seed, gen_retries);
      }
      emit_instance(inst, gen_out);
      return 0;
    }

    if (solve->parsed()) {
      const ggdp::Instance inst = load_instance(solve_file);
      const ggdp::LegalSequence greedy = ggdp::greedy_sequence(inst);
      rep.kv("m", static_cast<long long>(ggdp::upper_bound_m(inst)));
      rep.kv("lb", static_cast<long long>(greedy.vertices.size()));
      if (solve_greedy && !solve_exact) {
        rep.kv("value", static_cast<long long>(greedy.vertices.size()));
        rep.kv("witness", greedy.vertices);
        rep.kv("status", "greedy");
        rep.flush();
        return 0;
      }
      const ggdp::GrundyResult res =
          ggdp::grundy_exact(inst, resolve_budget(solve_budget));
      if (!res.solved) {
        rep.kv("status", "budget-exceeded");
        rep.kv("nodes", static_cast<long long>(res.nodes));
        rep.flush();
        return 1;
      }
      rep.kv("value", static_cast<long long>(res.value));
      rep.kv("witness", res.witness);
      rep.kv("status", "exact");
      rep.kv("nodes", static_cast<long long>(res.nodes));
      rep.flush();
      return 0;
    }

    if (cf->parsed()) {
      int value = 0;
      if (cf_path->parsed())
        value = ggdp::path_grundy(cf_n, parse_cset(cf_c, cf_n, false));
      else
        value = ggdp::web_grundy(cf_n, cf_k, parse_cset(cf_c, cf_n, true));
      rep.kv("value", static_cast<long long>(value));
      rep.flush();
      return 0;
    }

    if (model_cmd->parsed() || count_cmd->parsed()) {
      const bool is_model = model_cmd->parsed();
      const ggdp::Instance inst =
          load_instance(is_model ? model_file : count_file);
      const ggdp::Formulation form =
          ggdp::formulation_from_string(is_model ? model_form : count_form);
      const std::optional<int> lb_flag = is_model ? model_lb : count_lb;
      const int lb = lb_flag ? *lb_flag : default_lb(inst);
      const ggdp::Model model = ggdp::build_formulation(inst, form, lb);
      rep.kv("form", ggdp::formulation_name(form));
      rep.kv("lb", static_cast<long long>(lb));
      rep.kv("m", static_cast<long long>(model.m));
      if (is_model) {
        rep.kv("rows", static_cast<long long>(model.rows.size()));
        rep.kv("cols", static_cast<long long>(model.ncols()));
        if (!model_export.empty()) {
          const std::string text = ggdp::export_lp(model);
          if (model_export == "-") {
            std::cout << text;
          } else {
            std::ofstream out(model_export);
            if (!out)
              throw std::runtime_error("cannot write file: " + model_export);
            out << text;
            rep.kv("exported", model_export);
          }
        }
      } else {
        rep.kv("count",
               static_cast<long long>(ggdp::count_solutions(model)));
      }
      rep.flush();
      return 0;
    }

    if (poly->parsed()) {
      const ggdp::Instance inst = load_instance(poly_file);
      if (poly_dim->parsed()) {
        const ggdp::Formulation form = ggdp::formulation_from_string(poly_form);
        const ggdp::VertexCloud cloud = ggdp::enumerate_cloud(inst, form);
        const int dim = ggdp::affine_dimension(cloud);
        rep.kv("form", ggdp::formulation_name(form));
        rep.kv("cloud", static_cast<long long>(cloud.size()));
        rep.kv("dim", static_cast<long long>(dim));
        rep.kv("ambient", static_cast<long long>(cloud.ncols()));
        if (form == ggdp::Formulation::F3)
          rep.kv("formula", static_cast<long long>(ggdp::p3_dimension_formula(
                                inst, ggdp::budget_from_env())));
      } else if (poly_check->parsed()) {
        const ggdp::IneqSpec spec = ggdp::parse_ineq_spec(poly_ineq);
        const ggdp::Inequality iq = ggdp::build_from_spec(inst, spec);
        const ggdp::VertexCloud cloud =
            ggdp::enumerate_cloud(inst, ggdp::Formulation::F1);
        rep.kv("label", iq.label);
        rep.kv("valid", ggdp::check_valid(iq, cloud) ? "yes" : "no");
        const ggdp::FacetCheck fc = ggdp::check_facet(iq, cloud);
        rep.kv("facet", fc.is_facet ? "yes" : "no");
        rep.kv("tight_dim", static_cast<long long>(fc.tight_dim));
        rep.kv("cloud_dim", static_cast<long long>(fc.cloud_dim));
        rep.kv("sanity", fc.sanity_ok ? "ok" : "violated");
        try {
          rep.kv("predicted", ggdp::predict_facet(inst, spec) ? "yes" : "no");
        } catch (const std::invalid_argument&) {
          rep.kv("predicted", "n/a");
        }
      } else {
        const ggdp::AuditResult res = ggdp::audit_families(inst);
        rep.kv("checked", static_cast<long long>(res.checked));
        rep.kv("cloud", static_cast<long long>(res.cloud_size));
        rep.kv("cloud_dim", static_cast<long long>(res.cloud_dim));
        for (const auto& row : res.invalid) rep.list("invalid", row.label);
        for (const auto& row : res.disagreements)
          rep.list("disagree",
                   row.label + " predicted=" + (row.predicted ? "yes" : "no") +
                       " actual=" + (row.actual ? "yes" : "no"));
        rep.kv("disagreements",
               static_cast<long long>(res.disagreements.size()));
        rep.kv("invalid_count", static_cast<long long>(res.invalid.size()));
      }
      rep.flush();
      return 0;
    }

    if (sep->parsed()) {
      const ggdp::Instance inst = load_instance(sep_file);
      const int m = ggdp::upper_bound_m(inst);
      const ggdp::FractionalPoint pt = load_point(sep_point, inst.n, m);
      const bool run1 = sep_t1 || !sep_t2;
      const bool run2 = sep_t2 || !sep_t1;
      ggdp::SeparationState state = ggdp::precompute(inst);
      std::vector<ggdp::Inequality> cuts;
      if (run1) {
        cuts = ggdp::separate_type1(inst, state, pt);
      } else {
        state.active = inst.vertices();
      }
      if (run2) {
        auto more = ggdp::separate_type2(inst, state, pt);
        cuts.insert(cuts.end(), more.begin(), more.end());
      }
      for (const auto& cut : cuts) rep.list("cut", cut.label);
      rep.kv("cuts", static_cast<long long>(cuts.size()));
      rep.flush();
      return 0;
    }

    if (root->parsed()) {
      const ggdp::Instance inst = load_instance(root_file);
      const ggdp::Formulation form = ggdp::formulation_from_string(root_form);
      const bool use1 = root_cuts.find("type1") != std::string::npos;
      const bool use2 = root_cuts.find("type2") != std::string::npos;
      if (!use1 && !use2)
        throw std::runtime_error("--cuts must name type1 and/or type2");
      const ggdp::RootCutResult res = ggdp::root_cut_loop(
          inst, form, root_rounds, use1, use2, root_lb ? *root_lb : 1);
      if (rep.as_json) {
        rep.obj["bound_history"] = res.bound_history;
      } else {
        for (std::size_t r = 0; r < res.bound_history.size(); ++r) {
          char buf[64];
          std::snprintf(buf, sizeof(buf), "round %zu: %.6f", r,
                        res.bound_history[r]);
          std::cout << buf << "\n";
        }
      }
      for (const auto& cut : res.cuts) rep.list("cut", cut.label);
      rep.kv("cuts_added", static_cast<long long>(res.cuts_added));
      rep.kv("status", ggdp::lp_status_name(res.final_status));
      rep.flush();
      return res.final_status == ggdp::LpStatus::Optimal ? 0 : 1;
    }

    if (reduce->parsed()) {
      const ggdp::Instance inst = load_instance(reduce_file);
      const auto [reduced, removed] = ggdp::reduce_twins(inst);
      if (rep.as_json) {
        rep.obj["removed"] = removed;
        rep.obj["instance"] = ggdp::write_instance(reduced);
        rep.flush();
      } else {
        std::cerr << "removed:";
        for (int v : removed) std::cerr << ' ' << v;
        std::cerr << "\n";
        emit_instance(reduced, reduce_out);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
