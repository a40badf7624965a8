#include "conecalc.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <string>

#include "conecalc/cone.hpp"
#include "conecalc/inflation.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/serialize.hpp"
#include "conecalc/strata.hpp"

using namespace conecalc;

struct cc_manifold {
  Manifold desc;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return CC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return errc_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CC_ERR_INTERNAL;
  }
}

void set_out(char** out, const std::string& value) {
  if (!out) throw Error(Errc::bad_input, "null output pointer");
  *out = dup_string(value);
  if (!*out) throw Error(Errc::internal, "allocation failure");
}

const Manifold& desc_of(const cc_manifold* m) {
  if (!m) throw Error(Errc::bad_input, "null manifold handle");
  return m->desc;
}

std::string require_text(const char* s, const char* what) {
  if (!s) throw Error(Errc::bad_input, std::string("null ") + what);
  return s;
}

std::size_t subset_guard() {
  if (const char* env = std::getenv("CONECALC_MAX_SUBSETS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSubsetGuard;
}

AreaVec vec_arg(const cc_manifold* m, const char* text, const char* what = "area vector") {
  return parse_area_vec(require_text(text, what), desc_of(m).n);
}

HomClass cls_arg(const cc_manifold* m, const char* text, const char* what = "class") {
  return parse_class(require_text(text, what), desc_of(m));
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    out.push_back(static_cast<int>(std::strtol(cur.c_str(), nullptr, 10)));
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw Error(Errc::parse, "index list must be comma-separated integers");
      cur += ch;
    }
  }
  flush();
  return out;
}

std::pair<SliceSpec, SliceWindow> parse_slice_args(const Manifold& desc, const char* fixed,
                                                   const char* window) {
  SliceSpec spec;
  spec.c.assign(desc.n, std::nullopt);
  std::string ftext = require_text(fixed, "fixed assignment");
  std::string cur;
  auto assign = [&](const std::string& item) {
    if (item.empty()) return;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::parse, "fixed assignment needs name=value, got '" + item + "'");
    std::string name = item.substr(0, eq);
    Rat value = Rat::parse(item.substr(eq + 1));
    if (name == "mu") {
      if (spec.mu) throw Error(Errc::parse, "duplicate mu in fixed assignment");
      spec.mu = value;
    } else if (name.size() >= 2 && name[0] == 'c') {
      int idx = static_cast<int>(std::strtol(name.c_str() + 1, nullptr, 10));
      if (idx < 1 || idx > desc.n)
        throw Error(Errc::dimension_mismatch, "no coordinate named '" + name + "'");
      if (spec.c[idx - 1]) throw Error(Errc::parse, "duplicate " + name);
      spec.c[idx - 1] = value;
    } else {
      throw Error(Errc::parse, "no coordinate named '" + name + "'");
    }
  };
  for (char ch : ftext) {
    if (ch == ',') {
      assign(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  assign(cur);

  std::string wtext = require_text(window, "window");
  auto comma = wtext.find(',');
  if (comma == std::string::npos)
    throw Error(Errc::parse, "window needs 'x0:x1,y0:y1'");
  auto parse_range = [](const std::string& item) -> std::pair<Rat, Rat> {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw Error(Errc::parse, "window range needs 'lo:hi', got '" + item + "'");
    return {Rat::parse(item.substr(0, colon)), Rat::parse(item.substr(colon + 1))};
  };
  auto [x0, x1] = parse_range(wtext.substr(0, comma));
  auto [y0, y1] = parse_range(wtext.substr(comma + 1));
  return {std::move(spec), SliceWindow{x0, x1, y0, y1}};
}

}  // namespace

extern "C" {

const char* cc_version(void) { return "conecalc 0.1.0"; }

cc_manifold* cc_manifold_new(int g, int n) {
  if (g < 0 || n < 0) return nullptr;
  return new cc_manifold{Manifold{g, n}};
}

void cc_manifold_free(cc_manifold* m) { delete m; }

int cc_manifold_genus(const cc_manifold* m) { return m ? m->desc.g : -1; }
int cc_manifold_blowups(const cc_manifold* m) { return m ? m->desc.n : -1; }

const char* cc_last_error(void) { return g_last_error.c_str(); }

void cc_string_free(char* s) { std::free(s); }

int cc_pair(const cc_manifold* m, const char* a, const char* b, char** out) {
  return guarded([&] { set_out(out, std::to_string(pair(cls_arg(m, a), cls_arg(m, b)))); });
}

int cc_canonical_class(const cc_manifold* m, char** out) {
  return guarded([&] { set_out(out, format_class(canonical_class(desc_of(m)))); });
}

int cc_genus(const cc_manifold* m, const char* cls, char** out) {
  return guarded(
      [&] { set_out(out, std::to_string(adjunction_genus(desc_of(m), cls_arg(m, cls)))); });
}

int cc_index(const cc_manifold* m, const char* cls, char** out) {
  return guarded(
      [&] { set_out(out, std::to_string(riemann_index(desc_of(m), cls_arg(m, cls)))); });
}

int cc_codim(const cc_manifold* m, const char* cls, char** out) {
  return guarded([&] { set_out(out, std::to_string(codim(desc_of(m), cls_arg(m, cls)))); });
}

int cc_is_exceptional(const cc_manifold* m, const char* cls, int* out) {
  return guarded([&] {
    if (!out) throw Error(Errc::bad_input, "null output pointer");
    *out = is_exceptional_class(desc_of(m), cls_arg(m, cls)) ? 1 : 0;
  });
}

int cc_is_reduction(const cc_manifold* m, const char* cls, int* out) {
  return guarded([&] {
    if (!out) throw Error(Errc::bad_input, "null output pointer");
    *out = is_reduction_class(cls_arg(m, cls)) ? 1 : 0;
  });
}

int cc_canonical_form(const cc_manifold* m, const char* cls, char** out) {
  return guarded([&] { set_out(out, format_class(cls_arg(m, cls))); });
}

int cc_exceptional_set(const cc_manifold* m, char** out_json) {
  return guarded([&] { set_out(out_json, class_list_json(exceptional_set(desc_of(m)))); });
}

int cc_cone_check(const cc_manifold* m, const char* u, char** out_json) {
  return guarded(
      [&] { set_out(out_json, cone_report_json(cone_contains(desc_of(m), vec_arg(m, u)))); });
}

int cc_reduced_check(const cc_manifold* m, const char* u, char** out_json) {
  return guarded([&] {
    desc_of(m);
    set_out(out_json, reduced_report_json(is_reduced(vec_arg(m, u))));
  });
}

int cc_pd_class(const cc_manifold* m, const char* u, char** out_json) {
  return guarded([&] { set_out(out_json, pd_class_json(vec_arg(m, u))); });
}

int cc_chamber(const cc_manifold* m, const char* u, int diag_fiber_bound, char** out_json) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    AreaVec v = vec_arg(m, u);
    auto signature = section_candidates(desc, v, subset_guard());
    auto interval = chamber_interval(desc, v, subset_guard());
    if (diag_fiber_bound > 0) {
      auto diag = fiber_negative_classes(desc, v, diag_fiber_bound);
      set_out(out_json, chamber_json(desc, v, signature, interval, &diag));
    } else {
      set_out(out_json, chamber_json(desc, v, signature, interval, nullptr));
    }
  });
}

int cc_same_chamber(const cc_manifold* m, const char* u0, const char* u1, int* out) {
  return guarded([&] {
    if (!out) throw Error(Errc::bad_input, "null output pointer");
    *out = same_chamber(desc_of(m), vec_arg(m, u0), vec_arg(m, u1), subset_guard()) ? 1 : 0;
  });
}

int cc_segment_walls(const cc_manifold* m, const char* u0, const char* u1, int closed_end,
                     int format, char** out) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    SegmentWalls walls =
        segment_walls(desc, vec_arg(m, u0), vec_arg(m, u1), closed_end != 0, subset_guard());
    if (format == CC_FORMAT_JSON)
      set_out(out, segment_walls_json(walls, closed_end != 0));
    else if (format == CC_FORMAT_CSV)
      set_out(out, segment_walls_csv(desc, walls));
    else
      throw Error(Errc::bad_input, "walls support JSON and CSV output");
  });
}

int cc_slice(const cc_manifold* m, const char* fixed, const char* window, int format,
             int svg_scale, char** out) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    auto [spec, win] = parse_slice_args(desc, fixed, window);
    SliceArrangement arr = slice_arrangement(desc, spec, win, subset_guard());
    if (format == CC_FORMAT_JSON)
      set_out(out, slice_json(desc, arr));
    else if (format == CC_FORMAT_CSV)
      set_out(out, slice_csv(desc, arr));
    else if (format == CC_FORMAT_SVG)
      set_out(out, slice_svg(desc, arr, svg_scale));
    else
      throw Error(Errc::bad_input, "unknown output format");
  });
}

int cc_inflate(const cc_manifold* m, const char* u, const char* z, const char* t, int strict,
               char** out_vec) {
  return guarded([&] {
    AreaVec v = inflate_once(desc_of(m), vec_arg(m, u), cls_arg(m, z),
                             Rat::parse(require_text(t, "t")),
                             strict ? InflationMode::strict : InflationMode::formal);
    set_out(out_vec, format_area_vec(v));
  });
}

int cc_normalize(const cc_manifold* m, const char* u, char** out_vec) {
  return guarded([&] {
    desc_of(m);
    set_out(out_vec, format_area_vec(normalize_vector(vec_arg(m, u))));
  });
}

int cc_descend(const cc_manifold* m, const char* u, long k, const char* indices, const char* t,
               int strict, char** out_path_json) {
  return guarded([&] {
    std::vector<int> subtracted = parse_index_list(require_text(indices, "index list"));
    InflationPath path = section_descent(desc_of(m), vec_arg(m, u), k, subtracted,
                                         Rat::parse(require_text(t, "t")),
                                         strict ? InflationMode::strict : InflationMode::formal);
    set_out(out_path_json, path_json(path));
  });
}

int cc_alternate(const cc_manifold* m, const char* u, const char* s_cls, const char* x_cls,
                 int rounds, char** out_json) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    AreaVec v = vec_arg(m, u);
    HomClass s = cls_arg(m, s_cls, "S");
    HomClass x = cls_arg(m, x_cls, "X");
    auto seq = alternating_inflation(desc, v, s, x, rounds);
    set_out(out_json, alternating_json(desc, v, s, x, seq));
  });
}

int cc_plan(const cc_manifold* m, const char* u_from, const char* u_to, const char* hints_json,
            char** out_path_json) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    PlanHints hints = parse_plan_hints_json(hints_json ? hints_json : "", desc);
    InflationPath path =
        plan_path(desc, vec_arg(m, u_from), vec_arg(m, u_to), hints, subset_guard());
    set_out(out_path_json, path_json(path));
  });
}

int cc_replay(const cc_manifold* m, const char* path_json_text, char** out_vec) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    InflationPath path = parse_path_json(require_text(path_json_text, "path"), desc);
    AreaVec end = replay(desc, path);
    if (end != path.end)
      throw Error(Errc::bad_input, "replay ends at " + format_area_vec(end) +
                                       " but the path records " + format_area_vec(path.end));
    set_out(out_vec, format_area_vec(end));
  });
}

int cc_decompose(const cc_manifold* m, const char* e_cls, const char* u, int max_parts,
                 int coeff_bound, char** out_json) {
  return guarded([&] {
    DecompEnumeration en = enumerate_decompositions(desc_of(m), cls_arg(m, e_cls, "E"),
                                                    vec_arg(m, u), max_parts, coeff_bound);
    set_out(out_json, decomposition_enum_json(en));
  });
}

int cc_classify_decomposition(const cc_manifold* m, const char* dec_json, char** out_json) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    Decomposition dec = parse_decomposition_json(require_text(dec_json, "decomposition"), desc);
    set_out(out_json, exc_status_json(classify_decomposition(desc, dec)));
  });
}

int cc_cover_pairing(const cc_manifold* m, const char* cls, long mult, char** out_json) {
  return guarded(
      [&] { set_out(out_json, cover_pairing_json(cover_pairing(cls_arg(m, cls), mult))); });
}

int cc_collection_codim(const cc_manifold* m, const char* classes, char** out_json) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    std::vector<HomClass> list;
    std::string text = require_text(classes, "class list");
    std::string cur;
    auto flush = [&]() {
      if (!cur.empty()) list.push_back(parse_class(cur, desc));
      cur.clear();
    };
    for (char ch : text) {
      if (ch == ',')
        flush();
      else
        cur += ch;
    }
    flush();
    long long total = admissible_codim(desc, list);
    set_out(out_json, "{\"codim\":" + std::to_string(total) + "}");
  });
}

int cc_classify_profile(const cc_manifold* m, const char* profile_json, const char* u,
                        char** out_json) {
  return guarded([&] {
    const Manifold& desc = desc_of(m);
    JProfile profile = parse_profile_json(require_text(profile_json, "profile"), desc);
    StratumLabel label = classify_profile(desc, profile, vec_arg(m, u));
    set_out(out_json, stratum_label_json(label));
  });
}

}  // extern "C"
