#include "eqnoeth/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eqnoeth/fingrp.hpp"
#include "eqnoeth/gog.hpp"
#include "eqnoeth/matpoly.hpp"
#include "eqnoeth/metabelian.hpp"
#include "eqnoeth/varieties.hpp"
#include "eqnoeth/words.hpp"
#include "eqnoeth/wreath.hpp"
#include "json.hpp"

namespace eqnoeth {

using nlohmann::json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Run {
 public:
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<std::string> outputs;

  std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    inputs.emplace_back(path, fnv1a_hex(text));
    return text;
  }

  json read_json(const std::string& path) {
    const std::string text = read_file(path);
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
  }

  /// An inline JSON value when the argument starts with '{' or '[', else a file.
  json read_json_arg(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
      try {
        return json::parse(arg);
      } catch (const json::parse_error& e) {
        throw InputError("inline JSON: malformed at byte " + std::to_string(e.byte) + ": " + e.what());
      }
    }
    return read_json(arg);
  }

  /// A file holding a group (or {"group", "name", "coefficients"}), or a
  /// group name such as "S3".
  FamilyMember read_member(const std::string& ref) {
    if (!std::filesystem::exists(ref)) {
      try {
        return FamilyMember{ref, named_group(ref), {}};
      } catch (const std::exception& e) {
        throw InputError(ref + ": neither a readable file nor a known group name (" + e.what() + ")");
      }
    }
    const json j = read_json(ref);
    FamilyMember m{std::filesystem::path(ref).stem().string(), FiniteGroup(), {}};
    const bool wrapped = j.is_object() && j.contains("group");
    try {
      m.group = group_from_json(wrapped ? j["group"] : j);
    } catch (const std::exception& e) {
      throw InputError(ref + ": " + e.what());
    }
    if (j.is_object()) {
      if (j.contains("coefficients")) m.coefficients = j["coefficients"].get<std::vector<int>>();
      if (j.contains("name") && j["name"].is_string()) m.name = j["name"].get<std::string>();
    }
    for (int c : m.coefficients)
      if (c < 0 || c >= m.group.order()) throw InputError(ref + ": coefficient out of range");
    return m;
  }
};

std::string join(const std::vector<int>& v, const std::string& sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string bracket(const std::vector<int>& v) { return "[" + join(v) + "]"; }

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

/// Boolean table with row label `rl`, column label `cl`; mark(i, j) decorates cells.
void print_table(std::ostream& os, const std::string& rl, const std::string& cl,
                 const std::vector<std::vector<char>>& t, const std::function<std::string(int, int)>& mark = {}) {
  const int cols = t.empty() ? 0 : static_cast<int>(t[0].size());
  os << std::setw(5) << (rl + "\\" + cl);
  for (int j = 0; j < cols; ++j) os << std::setw(4) << j;
  os << '\n';
  for (std::size_t i = 0; i < t.size(); ++i) {
    os << std::setw(5) << i;
    for (int j = 0; j < cols; ++j) {
      std::string cell = t[i][j] ? "1" : ".";
      if (mark) cell += mark(static_cast<int>(i), j);
      os << std::setw(4) << cell;
    }
    os << '\n';
  }
}

json bool_matrix(const std::vector<std::vector<char>>& t) {
  json a = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (char c : row) r.push_back(static_cast<bool>(c));
    a.push_back(std::move(r));
  }
  return a;
}

json separation_json(const Separation& s, const std::vector<FamilyMember>& family) {
  if (s.member < 0) return nullptr;
  return json{{"member", family[s.member].name}, {"tuple", s.tuple}, {"equation", s.equation}};
}

// ---------------------------------------------------------------------------
// Subcommands. Each writes text to `os`, fills `mirror` and returns an exit code.

struct VarietyArgs {
  std::string group, system, target;
  int nvars = 0;
};

int run_variety(const VarietyArgs& a, Run& run, std::ostream& os, json& mirror) {
  const auto member = run.read_member(a.group);
  const auto system = parse_system(run.read_file(a.system), a.nvars);
  Variety v;
  if (!a.target.empty()) {
    const json t = run.read_json(a.target);
    auto q = quasi_solution_set(system, member.group, t.get<std::vector<int>>(), member.coefficients);
    mirror["target"] = q.target;
    v = std::move(q);
  } else {
    v = solution_set(system, member.group, member.coefficients);
  }
  for (const auto& t : v.tuples) os << json(t).dump() << '\n';
  mirror["group_order"] = member.group.order();
  mirror["n_vars"] = v.n_vars;
  mirror["equations"] = system.equations.size();
  mirror["count"] = v.size();
  mirror["tuples"] = v.tuples;
  return kExitOk;
}

struct FamilyArgs {
  std::vector<std::string> groups;
  std::string system;
  int nvars = 0;
  bool shrink = false;
};

int run_family_min(const FamilyArgs& a, Run& run, std::ostream& os, json& mirror) {
  std::vector<FamilyMember> family;
  for (const auto& g : a.groups) family.push_back(run.read_member(g));
  const auto system = parse_system(run.read_file(a.system), a.nvars);
  const auto r = minimal_subsystem(system, family, a.shrink);
  os << "equations: " << system.equations.size() << "\n";
  for (std::size_t i = 0; i < system.equations.size(); ++i)
    os << "  [" << i << "] " << to_string(system.equations[i]) << "\n";
  os << "family:";
  for (const auto& m : family) os << ' ' << m.name << " (order " << m.group.order() << ")";
  os << "\nS_0 = {" << join(r.indices, ", ") << "}\n";
  auto describe = [&](const Separation& s) {
    return "in " + family[s.member].name + " the tuple " + bracket(s.tuple) + " violates equation " +
           std::to_string(s.equation);
  };
  for (std::size_t k = 0; k < r.rejected_prefixes.size(); ++k)
    os << "prefix of length " << k << " is too weak: " << describe(r.rejected_prefixes[k]) << "\n";
  for (std::size_t i = 0; i < r.necessity.size(); ++i) {
    const auto& s = r.necessity[i];
    os << "equation " << r.indices[i] << ": ";
    if (s.member < 0)
      os << "redundant given the others\n";
    else
      os << "needed; " << describe(s) << " while satisfying the rest\n";
  }
  mirror["indices"] = r.indices;
  mirror["members"] = json::array();
  for (const auto& m : family) mirror["members"].push_back(m.name);
  mirror["rejected_prefixes"] = json::array();
  for (const auto& s : r.rejected_prefixes) mirror["rejected_prefixes"].push_back(separation_json(s, family));
  mirror["necessity"] = json::array();
  for (const auto& s : r.necessity) mirror["necessity"].push_back(separation_json(s, family));
  return kExitOk;
}

int run_ut_table(int K, int N, std::ostream& os, json& mirror) {
  if (K < 1 || K > 6) throw InputError("--max-rank-exp must be between 1 and 6");
  if (N < 0) throw InputError("--max-index must be nonnegative");
  const auto t = g1_witness_table(K, N);
  os << "s_n(A_m, B, C) over ranks";
  for (int k = 1; k <= K; ++k) os << ' ' << (1 << k);
  os << "; 1 = identity, . = not; * = beyond the faithful range n+m+3 < " << (1 << (K + 1)) << "\n";
  print_table(os, "n", "m", t.identity, [&](int n, int m) { return t.faithful[n][m] ? "" : "*"; });
  std::vector<std::vector<char>> mismatch(t.identity.size(), std::vector<char>(t.identity[0].size()));
  int bad = 0;
  for (std::size_t n = 0; n < mismatch.size(); ++n)
    for (std::size_t m = 0; m < mismatch[n].size(); ++m)
      if (t.identity[n][m] != t.predicate[n][m]) {
        ++bad;
        os << "mismatch at n=" << n << " m=" << m << "\n";
      }
  os << "agrees with \"n+m+3 is not a power of 2 up to 2^" << K << "\": " << (bad ? "no" : "yes") << "\n";
  mirror["K"] = K;
  mirror["N"] = N;
  mirror["identity"] = bool_matrix(t.identity);
  mirror["predicate"] = bool_matrix(t.predicate);
  mirror["faithful"] = bool_matrix(t.faithful);
  mirror["matches"] = bad == 0;
  return bad ? kExitFalsified : kExitOk;
}

int run_nnsen(int d, std::ostream& os, json& mirror) {
  if (d < 0 || d > 12) throw InputError("--depth must be between 0 and 12");
  const auto t = nnsen_table(d);
  os << "[A_j, B_k] = 1 over Z[X]/(X^" << (1 << d) << " - 1); 1 = identity\n";
  print_table(os, "j", "k", t);
  int bad = 0;
  for (int j = 0; j <= d; ++j)
    for (int k = 0; k <= d; ++k)
      if (static_cast<bool>(t[j][k]) != (j <= k)) ++bad;
  os << "agrees with j <= k: " << (bad ? "no" : "yes") << "\n";
  mirror["depth"] = d;
  mirror["table"] = bool_matrix(t);
  mirror["matches"] = bad == 0;
  return bad ? kExitFalsified : kExitOk;
}

int run_bs12(int max, std::ostream& os, json& mirror) {
  if (max < 0 || max > 60) throw InputError("--max must be between 0 and 60");
  const auto t = bs12_table(max, max);
  os << "s_n(t, a^(2^m)) in <a> for s_n = X1^n X2 X1^-n in BS(1,2); 1 = member\n";
  print_table(os, "n", "m", t);
  int bad = 0;
  for (int n = 0; n <= max; ++n)
    for (int m = 0; m <= max; ++m)
      if (static_cast<bool>(t[n][m]) != (m >= n)) ++bad;
  os << "agrees with m >= n: " << (bad ? "no" : "yes") << "\n";
  mirror["max"] = max;
  mirror["table"] = bool_matrix(t);
  mirror["matches"] = bad == 0;
  return bad ? kExitFalsified : kExitOk;
}

int run_poly_translate(const std::string& word, int rank, int nvars, std::ostream& os, json& mirror) {
  if (rank < 1 || rank > 8) throw InputError("--rank must be between 1 and 8");
  const Word s = parse_word(word, nvars);
  if (!s.is_positive()) throw InputError("the word must be inverse-free; positivize it first");
  const auto polys = word_to_polys(s, rank);
  const auto names = matrix_variable_names(rank, s.n_vars());
  os << "s = " << to_string(s) << " over " << rank << "x" << rank << " matrices X1..X" << s.n_vars() << "\n";
  mirror["word"] = to_string(s);
  mirror["rank"] = rank;
  mirror["variables"] = names;
  mirror["entries"] = json::array();
  for (int i = 0; i < rank; ++i) {
    json row = json::array();
    for (int j = 0; j < rank; ++j) {
      const auto text = to_string(polys[i][j], names);
      os << "s[" << i + 1 << "," << j + 1 << "] = " << text << "\n";
      row.push_back(text);
    }
    mirror["entries"].push_back(std::move(row));
  }
  return kExitOk;
}

struct MetabelianArgs {
  std::string a, p, action, words;
};

int run_metabelian(const MetabelianArgs& args, Run& run, std::ostream& os, json& mirror) {
  const auto a = run.read_member(args.a).group;
  const auto p = run.read_member(args.p).group;
  json act = run.read_json_arg(args.action);
  if (act.is_object() && act.contains("action")) act = act["action"];
  const auto g = semidirect_product(a, p, act.get<std::vector<std::vector<int>>>());
  const auto system = parse_system(run.read_file(args.words));
  os << "A x| P with |A| = " << a.order() << ", |P| = " << p.order() << "\n";
  int bad = 0;
  mirror["words"] = json::array();
  for (const auto& w : system.equations) {
    const Word s = w.to_word();
    if (!s.is_positive()) throw InputError("word " + to_string(s) + " is not inverse-free");
    const auto r = split_sweep(s, g);
    os << to_string(s) << ": tuples " << r.tuples << ", solutions " << r.solutions << ", disagreements "
       << r.disagreements;
    if (r.first_disagreement) os << ", first " << bracket(*r.first_disagreement);
    os << "\n";
    bad += r.disagreements > 0;
    json jw{{"word", to_string(s)}, {"tuples", r.tuples}, {"solutions", r.solutions},
            {"disagreements", r.disagreements}};
    jw["first_disagreement"] = r.first_disagreement ? json(*r.first_disagreement) : json(nullptr);
    mirror["words"].push_back(std::move(jw));
  }
  mirror["agree"] = bad == 0;
  return bad ? kExitFalsified : kExitOk;
}

int run_wreath_witness(int depth, int g, std::ostream& os, json& mirror) {
  if (depth < 0 || depth > 6) throw InputError("--depth must be between 0 and 6");
  const auto ws = non_noetherian_witnesses(depth, g);
  os << "spread elements g^(K_n) in C2 wr (C2 wr Z), K_n = window |j| <= n, h_n = delta_(n+1)\n";
  os << std::setw(4) << "n" << std::setw(10) << "|K_n|" << std::setw(16) << "commutes K_n" << std::setw(16)
     << "commutes h_<n" << std::setw(16) << "first failure" << "\n";
  int bad = 0;
  mirror["witnesses"] = json::array();
  for (const auto& w : ws) {
    os << std::setw(4) << w.n << std::setw(10) << w.subgroup_order << std::setw(16)
       << (w.commutes_with_subgroup ? "yes" : "no") << std::setw(16) << (w.commutes_with_prior ? "yes" : "no")
       << std::setw(16) << (w.first_failure < 0 ? std::string("none") : "h_" + std::to_string(w.first_failure))
       << "\n";
    const bool expected = w.commutes_with_subgroup && w.commutes_with_prior && w.first_failure == (g ? w.n : -1);
    bad += !expected;
    mirror["witnesses"].push_back({{"n", w.n},
                                   {"subgroup_order", w.subgroup_order},
                                   {"commutes_with_subgroup", w.commutes_with_subgroup},
                                   {"commutes_with_prior", w.commutes_with_prior},
                                   {"first_failure", w.first_failure}});
  }
  os << "spread law holds: " << (bad ? "no" : "yes") << "\n";
  mirror["holds"] = bad == 0;
  return bad ? kExitFalsified : kExitOk;
}

struct SeparabilityArgs {
  std::string f, h, top = "C2", base = "Z";
  long long max_n = 64, bound = 4096;
};

const char* status_name(SeparabilityCertificate::Status s) {
  switch (s) {
    case SeparabilityCertificate::Status::Certified:
      return "certified";
    case SeparabilityCertificate::Status::IsPower:
      return "is-power";
    default:
      return "exhausted";
  }
}

template <class W, class E>
int report_certificate(const W& w, const E& x, const E& y, const SeparabilityCertificate& c, bool verified,
                       std::ostream& os, json& mirror) {
  os << "x = " << w.format(x) << "\ny = " << w.format(y) << "\n";
  os << "status: " << status_name(c.status) << "\n";
  mirror["status"] = status_name(c.status);
  mirror["candidates"] = c.candidates;
  if (c.status == SeparabilityCertificate::Status::IsPower) {
    os << "y = x^" << c.power << "\n";
    mirror["power"] = c.power;
  } else if (c.status == SeparabilityCertificate::Status::Certified) {
    os << "B = {" << join(c.B, ", ") << "}, |G/B| = " << c.top_quotient_order << "\n";
    if (c.modulus)
      os << "quotient of Z: Z/" << c.modulus << "\n";
    else
      os << "N = {" << join(c.N, ", ") << "}, |H/N| = " << c.base_quotient_order << "\n";
    os << "order of the image of x: " << c.image_order << "\n";
    os << "independent verification: " << (verified ? "passed" : "FAILED") << "\n";
    mirror["B"] = c.B;
    mirror["modulus"] = c.modulus;
    mirror["N"] = c.N;
    mirror["top_quotient_order"] = c.top_quotient_order;
    mirror["base_quotient_order"] = c.base_quotient_order;
    mirror["image_order"] = c.image_order;
    mirror["verified"] = verified;
  }
  os << "candidates examined: " << c.candidates << "\n";
  return c.status == SeparabilityCertificate::Status::Certified && !verified ? kExitFalsified : kExitOk;
}

int run_separability(const SeparabilityArgs& a, Run& run, std::ostream& os, json& mirror) {
  const auto top = run.read_member(a.top).group;
  const SeparabilityLimits limits{a.max_n, a.bound};
  const json jf = run.read_json_arg(a.f), jh = run.read_json_arg(a.h);
  if (a.base == "Z") {
    const auto w = lamp_wreath(top);
    const auto x = lamp_element_from_json(w, jf), y = lamp_element_from_json(w, jh);
    const auto c = separability_certificate(w, x, y, limits);
    const bool verified = c.status == SeparabilityCertificate::Status::Certified && verify_certificate(w, x, y, c);
    mirror["x"] = lamp_element_to_json(x);
    mirror["y"] = lamp_element_to_json(y);
    int code = report_certificate(w, x, y, c, verified, os, mirror);
    if (top.is_abelian()) {
      const long long rm = recipe_modulus(w, x, y);
      os << "constructive modulus: " << rm << "\n";
      mirror["recipe_modulus"] = rm;
      // The constructive argument guarantees success by that modulus.
      if (c.status == SeparabilityCertificate::Status::Exhausted && rm <= a.max_n) code = kExitFalsified;
    }
    return code;
  }
  const auto base = run.read_member(a.base).group;
  const FiniteWreath w{FiniteCarrier{top}, FiniteCarrier{base}};
  const auto x = finite_wreath_element_from_json(w, jf), y = finite_wreath_element_from_json(w, jh);
  const auto c = separability_certificate(w, x, y, limits);
  const bool verified = c.status == SeparabilityCertificate::Status::Certified && verify_certificate(w, x, y, c);
  mirror["x"] = finite_wreath_element_to_json(x);
  mirror["y"] = finite_wreath_element_to_json(y);
  return report_certificate(w, x, y, c, verified, os, mirror);
}

struct GogArgs {
  std::string graph, word;
  bool rf = false, malnormality = false, membership = false;
  std::vector<int> endos;
  int orders = 0;
  std::optional<std::uint64_t> seed;
  double epsilon = 2;
};

int run_gog(const GogArgs& a, Run& run, std::ostream& os, json& mirror) {
  if (a.orders > 0 && !a.seed) throw InputError("--orders needs --seed");
  if (a.orders < 0) throw InputError("--orders must be nonnegative");
  const auto g = gog_from_json(run.read_json(a.graph));
  int code = kExitOk;
  os << "graph: " << g.vertex_count() << " vertices, " << g.edges().size() << " directed edges; tree edges {"
     << join(g.tree_edges(), ", ") << "}\n";
  mirror["vertices"] = g.vertex_count();
  mirror["edges"] = g.edges().size();
  mirror["tree_edges"] = g.tree_edges();

  if (!a.word.empty()) {
    std::istringstream lines(run.read_file(a.word));
    mirror["words"] = json::array();
    for (std::string line; std::getline(lines, line);) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const auto w = parse_gog_word(g, line);
      const auto r = britton_reduce(g, w);
      const bool trivial = r.word.edges.empty() && r.word.elements.front() == 0;
      os << "word: " << to_string(g, w) << "\n  reduced: " << to_string(g, r.word) << " (" << r.trace.size()
         << " pinches, " << r.word.edge_count() << " edge letters)\n  " << (trivial ? "trivial" : "nontrivial")
         << "\n";
      json jw{{"input", line},
              {"word", to_string(g, w)},
              {"reduced", to_string(g, r.word)},
              {"pinches", r.trace.size()},
              {"edge_letters", r.word.edge_count()},
              {"trivial", trivial}};
      if (a.orders > 0) {
        int disagree = 0;
        for (int k = 0; k < a.orders; ++k) {
          const auto rk = britton_reduce(g, w, *a.seed + static_cast<std::uint64_t>(k));
          const bool tk = rk.word.edges.empty() && rk.word.elements.front() == 0;
          if (tk != trivial || rk.word.edge_count() != r.word.edge_count()) ++disagree;
        }
        os << "  " << a.orders << " random pinch orders: " << (disagree ? "DISAGREE" : "agree") << "\n";
        jw["orders_agree"] = disagree == 0;
        if (disagree) code = kExitFalsified;
      }
      if (a.rf) {
        if (trivial) {
          os << "  rf witness: none (the word is trivial)\n";
          jw["rf_witness"] = nullptr;
        } else {
          const auto rf = rf_witness(g, w);
          const auto q = quotient_gog(g, rf.collection);
          std::vector<int> orders;
          for (const auto& v : q.graph.vertices()) orders.push_back(v.order());
          os << "  rf witness: seed vertex " << rf.seed_vertex << ", seed {" << join(rf.seed, ", ")
             << "}, quotient vertex orders " << bracket(orders) << "\n    image: " << to_string(q.graph, rf.image)
             << "\n    reduced image: " << to_string(q.graph, rf.reduced_image) << "\n";
          json normals = json::array();
          for (const auto& n : rf.collection.normals) normals.push_back(n.elements());
          jw["rf_witness"] = {{"seed_vertex", rf.seed_vertex},   {"seed", rf.seed},
                              {"normals", normals},              {"quotient_orders", orders},
                              {"image", to_string(q.graph, rf.image)},
                              {"reduced_image", to_string(q.graph, rf.reduced_image)},
                              {"candidates", rf.candidates}};
        }
      }
      mirror["words"].push_back(std::move(jw));
    }
  }

  if (a.malnormality) {
    const auto m = malnormality_constant(g);
    const auto c = acyl_constants(m.D, a.epsilon);
    os << "malnormality constant D = " << m.D;
    if (m.vertex >= 0)
      os << " (vertex " << m.vertex << ", edges " << m.e << " and " << m.f << ", conjugator " << m.g << ")";
    os << "\nepsilon = " << num(a.epsilon) << ": D_eps = " << num(c.d_eps) << ", N_eps = " << num(c.n_eps) << "\n";
    mirror["malnormality"] = {{"D", m.D}, {"vertex", m.vertex}, {"e", m.e}, {"f", m.f}, {"g", m.g},
                              {"epsilon", a.epsilon}, {"D_eps", c.d_eps}, {"N_eps", c.n_eps}};
  }

  mirror["endomorphisms"] = json::object();
  for (int v : a.endos) {
    const auto es = closed_path_endomorphisms(g, v);
    os << "closed path endomorphisms at vertex " << v << ": " << es.size() << "\n";
    json list = json::array();
    for (const auto& e : es) {
      os << "  " << bracket(e.images()) << "\n";
      list.push_back(e.images());
    }
    mirror["endomorphisms"][std::to_string(v)] = list;
  }

  if (a.membership) {
    int checked = 0, bad = 0;
    for (const auto& e : g.edges()) {
      if (!e.ext) continue;
      for (int h = 0; h < g.vertex(e.from).order(); ++h, ++checked)
        if (edge_membership_test(g, e.id, h) != g.in_edge_image(e.id, h)) ++bad;
    }
    os << "edge membership by word triviality: " << checked << " checks, " << bad << " disagreements\n";
    mirror["membership"] = {{"checks", checked}, {"disagreements", bad}};
    if (bad) code = kExitFalsified;
  }
  return code;
}

// ---------------------------------------------------------------------------

struct Common {
  bool json = false;
  std::string json_out, manifest;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_flag("--json", c.json, "Print the JSON mirror instead of the text report");
  sub->add_option("--json-out", c.json_out, "Also write the JSON mirror to this file");
  sub->add_option("--manifest", c.manifest, "Write the run manifest here instead of stderr");
}

json parameters(const CLI::App* sub) {
  json p = json::object();
  for (const auto* opt : sub->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name == "--help" || name == "-h" || opt->count() == 0) continue;
    if (opt->get_type_size() == 0)
      p[name] = true;
    else if (opt->results().size() == 1)
      p[name] = opt->results().front();
    else
      p[name] = opt->results();
  }
  return p;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Exact computations with equations over groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "eqnoeth 1.0");
  Common common;

  VarietyArgs va;
  auto* variety = app.add_subcommand("variety", "Solution set of a system over a finite group, as JSON lines");
  variety->add_option("--group", va.group, "Group file or name")->required();
  variety->add_option("--system", va.system, "System file, one equation per line")->required();
  variety->add_option("--nvars", va.nvars, "Number of variables (default: inferred)");
  variety->add_option("--target", va.target, "JSON array of elements A; solve s(x) in A instead of s(x) = 1");

  FamilyArgs fa;
  auto* family = app.add_subcommand("family-min", "Smallest prefix of a system that is equivalent over a family");
  family->add_option("--groups", fa.groups, "Group files or names")->required()->expected(1, -1);
  family->add_option("--system", fa.system, "System file")->required();
  family->add_option("--nvars", fa.nvars, "Number of variables (default: inferred)");
  family->add_flag("--shrink", fa.shrink, "Thin the prefix to an irredundant subset");

  int ut_k = 4, ut_n = 13;
  auto* ut = app.add_subcommand("ut-table", "Table of s_n(A_m, B, C) over unitriangular integer matrices");
  ut->add_option("--max-rank-exp", ut_k, "K: ranks 2, 4, ..., 2^K");
  ut->add_option("--max-index", ut_n, "N: 0 <= n, m <= N");

  int depth = 6;
  auto* nn = app.add_subcommand("nnsen", "Commutator table [A_j, B_k] over Z[X]/(X^(2^d) - 1)");
  nn->add_option("--depth", depth, "d");

  int bs_max = 10;
  auto* bs = app.add_subcommand("bs12", "Membership table for BS(1,2)");
  bs->add_option("--max", bs_max, "0 <= n, m <= max");

  std::string pt_word;
  int pt_rank = 3, pt_nvars = 0;
  auto* pt = app.add_subcommand("poly-translate", "Entries of s(X1, ..., Xn) as integer polynomials");
  pt->add_option("--word", pt_word, "Inverse-free word, e.g. \"X1 X2^2 X1\"")->required();
  pt->add_option("--rank", pt_rank, "Matrix size r");
  pt->add_option("--nvars", pt_nvars, "Number of variables (default: inferred)");

  MetabelianArgs ma;
  auto* meta = app.add_subcommand("metabelian-check", "Compare direct and decomposed solution tests over A x| P");
  meta->add_option("--A", ma.a, "Abelian group A (file or name)")->required();
  meta->add_option("--P", ma.p, "Acting group P (file or name)")->required();
  meta->add_option("--action", ma.action, "action[p][a] = a^p as JSON (inline or file)")->required();
  meta->add_option("--words", ma.words, "Inverse-free words, one per line")->required();

  int ww_depth = 3, ww_g = 1;
  auto* ww = app.add_subcommand("wreath-witness", "Spread elements in C2 wr (C2 wr Z)");
  ww->add_option("--depth", ww_depth, "Largest n");
  ww->add_option("--g", ww_g, "Top element of C2 (0 or 1)");

  SeparabilityArgs sa;
  auto* sep = app.add_subcommand("separability-cert", "Finite quotient separating y from <x> in a wreath product");
  sep->add_option("--element-f", sa.f, "x as JSON (inline or file)")->required();
  sep->add_option("--element-h", sa.h, "y as JSON (inline or file)")->required();
  sep->add_option("--max-n", sa.max_n, "Largest modulus tried for Z");
  sep->add_option("--top", sa.top, "Finite top group G (file or name)");
  sep->add_option("--base", sa.base, "Base group H: Z, or a finite group file or name");
  sep->add_option("--membership-bound", sa.bound, "Power search bound");

  GogArgs ga;
  std::uint64_t seed = 0;
  auto* gog = app.add_subcommand("gog-check", "Pinch reduction and related checks in a graph of groups");
  gog->add_option("--graph", ga.graph, "Graph of groups JSON")->required();
  gog->add_option("--word", ga.word, "File of words, one per line");
  gog->add_flag("--rf-witness", ga.rf, "Find a quotient graph of groups keeping each word nontrivial");
  gog->add_flag("--malnormality", ga.malnormality, "Malnormality and acylindricity constants");
  gog->add_option("--epsilon", ga.epsilon, "epsilon for the acylindricity constants");
  gog->add_option("--endos", ga.endos, "Vertices whose closed path endomorphisms are listed");
  gog->add_flag("--membership", ga.membership, "Cross-check edge membership by word triviality");
  gog->add_option("--orders", ga.orders, "Random pinch orders compared per word");
  auto* seed_opt = gog->add_option("--seed", seed, "Seed for random pinch orders");

  for (auto* sub : app.get_subcommands({})) add_common(sub, common);

  std::vector<std::string> argv_store{"eqnoeth"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  Run run;
  run.name = sub->get_name();
  json mirror = json::object();
  std::ostringstream text;
  int code = kExitOk;
  std::string error;
  try {
    if (sub == variety)
      code = run_variety(va, run, text, mirror);
    else if (sub == family)
      code = run_family_min(fa, run, text, mirror);
    else if (sub == ut)
      code = run_ut_table(ut_k, ut_n, text, mirror);
    else if (sub == nn)
      code = run_nnsen(depth, text, mirror);
    else if (sub == bs)
      code = run_bs12(bs_max, text, mirror);
    else if (sub == pt)
      code = run_poly_translate(pt_word, pt_rank, pt_nvars, text, mirror);
    else if (sub == meta)
      code = run_metabelian(ma, run, text, mirror);
    else if (sub == ww)
      code = run_wreath_witness(ww_depth, ww_g, text, mirror);
    else if (sub == sep)
      code = run_separability(sa, run, text, mirror);
    else if (sub == gog) {
      if (seed_opt->count()) ga.seed = seed;
      code = run_gog(ga, run, text, mirror);
    }
  } catch (const ParseError& e) {
    error = std::string(e.what()) + " (at character " + std::to_string(e.position()) + ")";
  } catch (const std::exception& e) {
    error = e.what();
  }

  if (!error.empty()) {
    code = kExitInput;
    err << "error: " << error << "\n";
    mirror = json{{"error", error}};
  } else {
    mirror["subcommand"] = run.name;
    if (common.json)
      out << mirror.dump(2) << "\n";
    else
      out << text.str();
    if (!common.json_out.empty()) {
      std::ofstream f(common.json_out, std::ios::binary);
      if (!f) {
        err << "error: cannot write " << common.json_out << "\n";
        code = kExitInput;
      } else {
        f << mirror.dump(2) << "\n";
        run.outputs.push_back(common.json_out);
      }
    }
  }

  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  json manifest{{"subcommand", run.name}, {"parameters", parameters(sub)}, {"outputs", run.outputs},
                {"duration_ms", ms},      {"exit_code", code}};
  manifest["inputs"] = json::array();
  for (const auto& [path, digest] : run.inputs) manifest["inputs"].push_back({{"path", path}, {"fnv1a64", digest}});
  if (!common.manifest.empty()) {
    std::ofstream f(common.manifest, std::ios::binary);
    f << manifest.dump(2) << "\n";
  } else {
    err << manifest.dump() << "\n";
  }
  return code;
}

}  // namespace eqnoeth
