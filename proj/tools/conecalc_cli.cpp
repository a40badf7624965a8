// conecalc command-line front end. Talks to the engine exclusively through
// the C API in conecalc.h; table/CSV/SVG presentation happens here.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conecalc.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct Options {
  int g = 1;
  std::optional<int> n;
  std::string format = "table";
  std::string output;
  bool strict = false;
};

struct CliError {
  int status;
  std::string message;
};

[[noreturn]] void die(int status, const std::string& message) {
  throw CliError{status, message};
}

[[noreturn]] void die_api(int status) {
  throw CliError{status, cc_last_error()};
}

using Handle = std::unique_ptr<cc_manifold, decltype(&cc_manifold_free)>;

std::string take(char* s) {
  std::string out = s ? s : "";
  cc_string_free(s);
  return out;
}

// --n defaults to the largest E index / c-vector length seen in the inputs
int infer_n(const std::vector<std::string>& class_args,
            const std::vector<std::string>& vec_args) {
  int n = 0;
  for (const std::string& text : class_args) {
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
      if (text[i] != 'E') continue;
      int idx = 0;
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
        idx = idx * 10 + (text[j] - '0');
        ++j;
      }
      if (j > i + 1) n = std::max(n, idx);
    }
  }
  for (const std::string& text : vec_args) {
    auto pos = text.find("c=");
    if (pos == std::string::npos) continue;
    std::string rest = text.substr(pos + 2);
    auto space = rest.find(' ');
    if (space != std::string::npos) rest = rest.substr(0, space);
    if (rest.empty()) continue;
    int count = 1;
    for (char ch : rest)
      if (ch == ',') ++count;
    n = std::max(n, count);
  }
  return n;
}

Handle make_handle(const Options& opt, const std::vector<std::string>& class_args = {},
                   const std::vector<std::string>& vec_args = {}) {
  int n = opt.n ? *opt.n : infer_n(class_args, vec_args);
  cc_manifold* m = cc_manifold_new(opt.g, n);
  if (!m) die(CC_ERR_INPUT, "invalid descriptor (need g >= 0, n >= 0)");
  return Handle(m, &cc_manifold_free);
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty() || opt.output == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) die(CC_ERR_INPUT, "cannot open output file " + opt.output);
  out << text;
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (opt.format == f) return;
  die(CC_ERR_INPUT, "output format '" + opt.format + "' is not valid for this command");
}

// inline JSON, "-" for stdin, or a file path
std::string load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '{') return arg;
  if (arg == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(arg, std::ios::binary);
  if (!in) die(CC_ERR_INPUT, "cannot read " + arg);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string walls_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  for (const json& cr : j["crossings"])
    out << "s=" << cr["s"].get<std::string>() << " class=" << cr["class"].get<std::string>()
        << " kind=" << cr["kind"].get<std::string>() << "\n";
  for (const json& co : j["coincident"])
    out << "coincident class=" << co["class"].get<std::string>()
        << " kind=" << co["kind"].get<std::string>() << "\n";
  if (j["crossings"].empty() && j["coincident"].empty()) out << "no walls met\n";
  return out.str();
}

std::string chamber_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  out << "chamber interval: (" << j["interval"]["lo"].get<std::string>() << ", "
      << j["interval"]["hi"].get<std::string>() << "]\n";
  out << "signature (" << j["classes"].size() << " classes):\n";
  for (const json& cls : j["classes"]) out << "  " << cls.get<std::string>() << "\n";
  if (j.contains("diagnostic_fiber_classes")) {
    out << "diagnostic fiber-type negative classes:\n";
    for (const json& cls : j["diagnostic_fiber_classes"])
      out << "  " << cls.get<std::string>() << "\n";
  }
  return out.str();
}

std::string cone_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  out << j["status"].get<std::string>() << " (u.u = " << j["u_square"].get<std::string>()
      << ")\n";
  for (const json& w : j["witnesses"]) {
    if (w.contains("class"))
      out << "witness: area(" << w["class"].get<std::string>() << ") = "
          << w["value"].get<std::string>() << "\n";
    else
      out << "witness: u.u = " << w["value"].get<std::string>() << "\n";
  }
  return out.str();
}

std::string reduced_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  out << (j["reduced"].get<bool>() ? "reduced" : "not reduced");
  if (j["on_reduction_wall"].get<bool>()) out << " (on reduction wall)";
  out << "\n";
  for (const json& w : j["witnesses"])
    out << "witness [" << w["kind"].get<std::string>() << "]: "
        << w["detail"].get<std::string>() << "\n";
  return out.str();
}

std::string path_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  out << "start: " << j["start"].get<std::string>() << "\n";
  for (const json& st : j["steps"])
    out << "  inflate " << st["class"].get<std::string>() << " by t="
        << st["t"].get<std::string>() << "\n";
  out << "end:   " << j["end"].get<std::string>() << "\n";
  return out.str();
}

std::string alternate_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  out << "E=" << j["E"].get<std::string>() << " S=" << j["S"].get<std::string>()
      << " X=" << j["X"].get<std::string>() << " gap0=" << j["gap0"].get<std::string>() << "\n";
  int r = 0;
  for (const json& v : j["sequence"]) out << "round " << r++ << ": " << v.get<std::string>()
                                          << "\n";
  return out.str();
}

std::string decompose_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  out << j["count"].get<std::size_t>() << " decomposition(s), window "
      << (j["complete"].get<bool>() ? "exhaustive" : "not proven exhaustive") << "\n";
  for (const json& dec : j["decompositions"]) {
    out << "  " << dec["total"].get<std::string>() << " =";
    bool first = true;
    for (const json& part : dec["parts"]) {
      out << (first ? " " : " + ");
      long long mult = part["mult"].get<long long>();
      if (mult != 1) out << mult << "*";
      out << "(" << part["class"].get<std::string>() << ")";
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

std::string classify_dec_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  out << j["kind"].get<std::string>();
  if (j.contains("S")) out << " S=" << j["S"].get<std::string>()
                           << " X=" << j["X"].get<std::string>();
  out << "\n";
  if (j.contains("reasons"))
    for (const json& r : j["reasons"]) out << "  " << r.get<std::string>() << "\n";
  return out.str();
}

std::string profile_table(const std::string& payload) {
  json j = json::parse(payload);
  std::ostringstream out;
  out << j["kind"].get<std::string>() << " codim>=" << j["codim_lower_bound"].get<long long>();
  if (j.contains("witness")) out << " witness=" << j["witness"].get<std::string>();
  out << "\n";
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"exact chamber structure and inflation calculus for blown-up ruled surfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cc_version()));

  Options opt;
  app.add_option("--g", opt.g, "base genus (default 1)");
  app.add_option("--n", opt.n, "number of blow-ups (default: inferred from arguments)");
  app.add_option("--format", opt.format, "output format: json|table|csv|svg")
      ->check(CLI::IsMember({"json", "table", "csv", "svg"}));
  app.add_option("--output", opt.output, "output file (default stdout)");
  app.add_flag("--strict", opt.strict, "open inflation parameter ranges (no formal endpoint)");

  std::string arg_a, arg_b, arg_u, arg_u2, arg_z, arg_t, arg_e, arg_s, arg_x;
  std::string arg_fix, arg_window, arg_indices, arg_classes, arg_path, arg_dec, arg_profile;
  long long arg_k = 0;
  int arg_rounds = 1, arg_scale = 100, arg_max_parts = 8, arg_coeff_bound = 3, arg_diag = 0;
  bool arg_closed_end = false, arg_no_sections = false, arg_normalize = false;
  std::vector<std::string> arg_mild_pairs;

  auto* c_pair = app.add_subcommand("pair", "intersection pairing of two classes");
  c_pair->add_option("--a", arg_a, "first class")->required();
  c_pair->add_option("--b", arg_b, "second class")->required();

  auto* c_genus = app.add_subcommand("genus", "adjunction genus of a class");
  c_genus->add_option("--a", arg_a, "class")->required();
  auto* c_index = app.add_subcommand("index", "Riemann index of a class");
  c_index->add_option("--a", arg_a, "class")->required();
  auto* c_codim = app.add_subcommand("codim", "stratum codimension of a class");
  c_codim->add_option("--a", arg_a, "class")->required();

  auto* c_exc = app.add_subcommand("exceptional", "the exceptional classes (g >= 1)");

  auto* c_cone = app.add_subcommand("cone-check", "symplectic cone membership");
  c_cone->add_option("--u", arg_u, "area vector")->required();
  auto* c_red = app.add_subcommand("reduced-check", "reduced-vector check");
  c_red->add_option("--u", arg_u, "area vector")->required();

  auto* c_chamber = app.add_subcommand("chamber", "chamber signature and interval");
  c_chamber->add_option("--u", arg_u, "area vector")->required();
  c_chamber->add_option("--diag-fiber", arg_diag,
                        "also enumerate fiber-type negative classes up to this bound");

  auto* c_walls = app.add_subcommand("walls", "wall crossings along a segment");
  c_walls->add_option("--u0", arg_u, "segment start")->required();
  c_walls->add_option("--u1", arg_u2, "segment end")->required();
  c_walls->add_flag("--closed-end", arg_closed_end, "include the s = 1 endpoint");

  auto* c_slice = app.add_subcommand("slice", "planar slice of the wall arrangement");
  c_slice->add_option("--fix", arg_fix, "fixed coordinates, e.g. \"c2=1/2\"")->required();
  c_slice->add_option("--window", arg_window, "free-coordinate box \"x0:x1,y0:y1\"")->required();
  c_slice->add_option("--scale", arg_scale, "SVG pixels per unit (default 100)");

  auto* c_inflate = app.add_subcommand("inflate", "single inflation step");
  c_inflate->add_option("--u", arg_u, "area vector")->required();
  c_inflate->add_option("--z", arg_z, "inflation class")->required();
  c_inflate->add_option("--t", arg_t, "parameter")->required();
  c_inflate->add_flag("--normalize", arg_normalize, "normalize the result to f = 1");

  auto* c_descend = app.add_subcommand("descend", "composite section inflation");
  c_descend->add_option("--u", arg_u, "area vector")->required();
  c_descend->add_option("--k", arg_k, "fiber coefficient of the section class")->required();
  c_descend->add_option("--indices", arg_indices, "subtracted E indices, e.g. \"1,3\"");
  c_descend->add_option("--t", arg_t, "parameter")->required();

  auto* c_alt = app.add_subcommand("alternate", "alternating inflation along a mild pair");
  c_alt->add_option("--u", arg_u, "area vector")->required();
  c_alt->add_option("--s", arg_s, "square -2 class S")->required();
  c_alt->add_option("--x", arg_x, "exceptional class X")->required();
  c_alt->add_option("--rounds", arg_rounds, "number of rounds (default 1)");

  auto* c_plan = app.add_subcommand("plan", "plan an inflation path between cone points");
  c_plan->add_option("--from", arg_u, "start vector")->required();
  c_plan->add_option("--to", arg_u2, "target vector")->required();
  c_plan->add_option("--mild-pair", arg_mild_pairs,
                     "available mild pair \"S;X\" (repeatable)");
  c_plan->add_flag("--no-sections", arg_no_sections, "forbid section-class inflation");

  auto* c_replay = app.add_subcommand("replay", "replay a recorded inflation path");
  c_replay->add_option("--path", arg_path, "path JSON (inline, file, or - for stdin)")
      ->required();

  auto* c_dec = app.add_subcommand("decompose", "enumerate degenerations of an exceptional class");
  c_dec->add_option("--e", arg_e, "exceptional class")->required();
  c_dec->add_option("--u", arg_u, "area vector")->required();
  c_dec->add_option("--max-parts", arg_max_parts, "part budget (default 8)");
  c_dec->add_option("--coeff-bound", arg_coeff_bound, "coefficient window (default 3)");

  auto* c_cdec = app.add_subcommand("classify-dec", "classify one decomposition");
  c_cdec->add_option("--dec", arg_dec, "decomposition JSON (inline, file, or -)")->required();

  auto* c_prof = app.add_subcommand("classify-profile", "classify a degeneration profile");
  c_prof->add_option("--profile", arg_profile, "profile JSON (inline, file, or -)")->required();
  c_prof->add_option("--u", arg_u, "area vector")->required();

  auto* c_coll = app.add_subcommand("collection-codim", "codimension of an admissible collection");
  c_coll->add_option("--classes", arg_classes, "comma-separated classes")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : CC_ERR_INPUT;
  }

  auto scalar_out = [&](int rc, char* payload) {
    if (rc != CC_OK) die_api(rc);
    require_format(opt, {"table", "json"});
    std::string text = take(payload);
    if (opt.format == "json") text = json{{"value", text}}.dump();
    emit(opt, text);
  };

  if (c_pair->parsed()) {
    auto m = make_handle(opt, {arg_a, arg_b});
    char* out = nullptr;
    int rc = cc_pair(m.get(), arg_a.c_str(), arg_b.c_str(), &out);
    scalar_out(rc, out);
  } else if (c_genus->parsed() || c_index->parsed() || c_codim->parsed()) {
    auto m = make_handle(opt, {arg_a});
    char* out = nullptr;
    int rc = c_genus->parsed()   ? cc_genus(m.get(), arg_a.c_str(), &out)
             : c_index->parsed() ? cc_index(m.get(), arg_a.c_str(), &out)
                                 : cc_codim(m.get(), arg_a.c_str(), &out);
    scalar_out(rc, out);
  } else if (c_exc->parsed()) {
    auto m = make_handle(opt);
    char* out = nullptr;
    int rc = cc_exceptional_set(m.get(), &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    if (opt.format == "json") {
      emit(opt, payload);
    } else {
      json j = json::parse(payload);
      std::string text;
      for (const json& cls : j["classes"]) text += cls.get<std::string>() + "\n";
      emit(opt, text);
    }
  } else if (c_cone->parsed()) {
    auto m = make_handle(opt, {}, {arg_u});
    char* out = nullptr;
    int rc = cc_cone_check(m.get(), arg_u.c_str(), &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : cone_table(payload));
  } else if (c_red->parsed()) {
    auto m = make_handle(opt, {}, {arg_u});
    char* out = nullptr;
    int rc = cc_reduced_check(m.get(), arg_u.c_str(), &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : reduced_table(payload));
  } else if (c_chamber->parsed()) {
    auto m = make_handle(opt, {}, {arg_u});
    char* out = nullptr;
    int rc = cc_chamber(m.get(), arg_u.c_str(), arg_diag, &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : chamber_table(payload));
  } else if (c_walls->parsed()) {
    auto m = make_handle(opt, {}, {arg_u, arg_u2});
    require_format(opt, {"table", "json", "csv"});
    char* out = nullptr;
    int fmt = opt.format == "csv" ? CC_FORMAT_CSV : CC_FORMAT_JSON;
    int rc = cc_segment_walls(m.get(), arg_u.c_str(), arg_u2.c_str(), arg_closed_end ? 1 : 0,
                              fmt, &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    emit(opt, opt.format == "table" ? walls_table(payload) : payload);
  } else if (c_slice->parsed()) {
    if (!opt.n) die(CC_ERR_INPUT, "slice needs an explicit --n");
    auto m = make_handle(opt);
    require_format(opt, {"json", "csv", "svg"});
    int fmt = opt.format == "csv" ? CC_FORMAT_CSV
              : opt.format == "svg" ? CC_FORMAT_SVG
                                    : CC_FORMAT_JSON;
    char* out = nullptr;
    int rc = cc_slice(m.get(), arg_fix.c_str(), arg_window.c_str(), fmt, arg_scale, &out);
    if (rc != CC_OK) die_api(rc);
    emit(opt, take(out));
  } else if (c_inflate->parsed()) {
    auto m = make_handle(opt, {arg_z}, {arg_u});
    char* out = nullptr;
    int rc = cc_inflate(m.get(), arg_u.c_str(), arg_z.c_str(), arg_t.c_str(),
                        opt.strict ? 1 : 0, &out);
    if (rc != CC_OK) die_api(rc);
    std::string vec = take(out);
    if (arg_normalize) {
      char* norm = nullptr;
      rc = cc_normalize(m.get(), vec.c_str(), &norm);
      if (rc != CC_OK) die_api(rc);
      vec = take(norm);
    }
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? json{{"u", vec}}.dump() : vec);
  } else if (c_descend->parsed()) {
    auto m = make_handle(opt, {}, {arg_u});
    char* out = nullptr;
    int rc = cc_descend(m.get(), arg_u.c_str(), arg_k, arg_indices.c_str(), arg_t.c_str(),
                        opt.strict ? 1 : 0, &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : path_table(payload));
  } else if (c_alt->parsed()) {
    auto m = make_handle(opt, {arg_s, arg_x}, {arg_u});
    char* out = nullptr;
    int rc = cc_alternate(m.get(), arg_u.c_str(), arg_s.c_str(), arg_x.c_str(), arg_rounds,
                          &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : alternate_table(payload));
  } else if (c_plan->parsed()) {
    auto m = make_handle(opt, {}, {arg_u, arg_u2});
    json hints;
    hints["sections"] = !arg_no_sections;
    hints["mild_pairs"] = json::array();
    for (const std::string& pair_text : arg_mild_pairs) {
      auto semi = pair_text.find(';');
      if (semi == std::string::npos)
        die(CC_ERR_INPUT, "--mild-pair needs \"S;X\", got '" + pair_text + "'");
      hints["mild_pairs"].push_back(json{{"S", pair_text.substr(0, semi)},
                                         {"X", pair_text.substr(semi + 1)}});
    }
    char* out = nullptr;
    int rc = cc_plan(m.get(), arg_u.c_str(), arg_u2.c_str(), hints.dump().c_str(), &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : path_table(payload));
  } else if (c_replay->parsed()) {
    std::string path_text = load_json_arg(arg_path);
    auto m = make_handle(opt, {}, {json::parse(path_text).value("start", std::string())});
    char* out = nullptr;
    int rc = cc_replay(m.get(), path_text.c_str(), &out);
    if (rc != CC_OK) die_api(rc);
    std::string vec = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? json{{"end", vec}}.dump() : vec);
  } else if (c_dec->parsed()) {
    auto m = make_handle(opt, {arg_e}, {arg_u});
    char* out = nullptr;
    int rc = cc_decompose(m.get(), arg_e.c_str(), arg_u.c_str(), arg_max_parts,
                          arg_coeff_bound, &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : decompose_table(payload));
  } else if (c_cdec->parsed()) {
    std::string dec_text = load_json_arg(arg_dec);
    auto m = make_handle(opt, {dec_text});
    char* out = nullptr;
    int rc = cc_classify_decomposition(m.get(), dec_text.c_str(), &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : classify_dec_table(payload));
  } else if (c_prof->parsed()) {
    std::string prof_text = load_json_arg(arg_profile);
    auto m = make_handle(opt, {prof_text}, {arg_u});
    char* out = nullptr;
    int rc = cc_classify_profile(m.get(), prof_text.c_str(), arg_u.c_str(), &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json" ? payload : profile_table(payload));
  } else if (c_coll->parsed()) {
    auto m = make_handle(opt, {arg_classes});
    char* out = nullptr;
    int rc = cc_collection_codim(m.get(), arg_classes.c_str(), &out);
    if (rc != CC_OK) die_api(rc);
    std::string payload = take(out);
    require_format(opt, {"table", "json"});
    emit(opt, opt.format == "json"
                  ? payload
                  : std::to_string(json::parse(payload)["codim"].get<long long>()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.status;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return CC_ERR_INPUT;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return CC_ERR_INTERNAL;
  }
}
