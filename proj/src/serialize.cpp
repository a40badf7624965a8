#include "conecalc/serialize.hpp"

#include <sstream>

#include "json.hpp"

namespace conecalc {

using nlohmann::json;  // object keys are kept sorted (std::map storage)

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(std::string s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

json class_str(const HomClass& cls) { return format_class(cls); }

json rat_str(const Rat& r) { return r.str(); }

HomClass class_from_json(const json& j, const Manifold& desc, const std::string& where) {
  if (!j.is_string()) fail(Errc::parse, where + ": expected a class string");
  return parse_class(j.get<std::string>(), desc);
}

}  // namespace

AreaVec parse_area_vec(std::string_view text, int expect_n) {
  std::optional<Rat> mu, f;
  std::optional<std::vector<Rat>> c;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      fail(Errc::parse, "expected key=value in area vector, got '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "mu") {
      if (mu) fail(Errc::parse, "duplicate mu");
      mu = Rat::parse(val);
    } else if (key == "f") {
      if (f) fail(Errc::parse, "duplicate f");
      f = Rat::parse(val);
    } else if (key == "c") {
      if (c) fail(Errc::parse, "duplicate c");
      std::vector<Rat> cs;
      if (!trim(val).empty())
        for (const std::string& part : split(val, ',')) cs.push_back(Rat::parse(part));
      c = std::move(cs);
    } else {
      fail(Errc::parse, "unknown area-vector field '" + key + "'");
    }
  }
  if (!mu) fail(Errc::parse, "area vector needs mu=");
  if (!c) c.emplace();
  if (expect_n >= 0 && static_cast<int>(c->size()) != expect_n)
    fail(Errc::dimension_mismatch, "area vector has " + std::to_string(c->size()) +
                                       " blow-up areas, expected " + std::to_string(expect_n));
  return AreaVec(*mu, f ? *f : Rat(1), std::move(*c));
}

std::string format_area_vec(const AreaVec& u) {
  std::string out = "mu=" + u.mu.str() + " f=" + u.f.str();
  if (!u.c.empty()) {
    out += " c=";
    for (int i = 0; i < u.n(); ++i) {
      if (i) out += ',';
      out += u.c[i].str();
    }
  }
  return out;
}

std::string cone_report_json(const ConeReport& r) {
  json j;
  switch (r.status) {
    case Membership::inside: j["status"] = "inside"; break;
    case Membership::boundary: j["status"] = "boundary"; break;
    case Membership::outside: j["status"] = "outside"; break;
  }
  j["u_square"] = rat_str(r.usq);
  j["witnesses"] = json::array();
  for (const auto& w : r.witnesses) {
    json e;
    if (w.cls) {
      e["class"] = class_str(*w.cls);
      e["kind"] = "exceptional-area";
    } else {
      e["kind"] = "square";
    }
    e["value"] = rat_str(w.value);
    j["witnesses"].push_back(e);
  }
  return j.dump();
}

std::string reduced_report_json(const ReducedReport& r) {
  json j;
  j["reduced"] = r.reduced;
  j["on_reduction_wall"] = r.on_reduction_wall;
  j["witnesses"] = json::array();
  for (const auto& w : r.witnesses)
    j["witnesses"].push_back(json{{"detail", w.detail}, {"kind", w.kind}});
  return j.dump();
}

std::string pd_class_json(const AreaVec& u) {
  RatClass p = pd_class(u);
  json j;
  j["a"] = rat_str(p.a);
  j["b"] = rat_str(p.b);
  j["m"] = json::array();
  for (const Rat& mi : p.m) j["m"].push_back(rat_str(mi));
  j["u_square"] = rat_str(u_square(u));
  return j.dump();
}

std::string class_list_json(const std::vector<HomClass>& classes) {
  json j;
  j["classes"] = json::array();
  for (const HomClass& cls : classes) j["classes"].push_back(class_str(cls));
  return j.dump();
}

std::string chamber_json(const Manifold& desc, const AreaVec& u,
                         const std::vector<HomClass>& signature,
                         const ChamberInterval& interval,
                         const std::vector<HomClass>* diagnostic_fiber) {
  (void)desc;
  json j;
  j["classes"] = json::array();
  for (const HomClass& cls : signature) j["classes"].push_back(class_str(cls));
  j["interval"] = json{{"hi", rat_str(interval.hi)}, {"lo", rat_str(interval.lo)}};
  j["mu"] = rat_str(u.mu);
  if (diagnostic_fiber) {
    j["diagnostic_fiber_classes"] = json::array();
    for (const HomClass& cls : *diagnostic_fiber)
      j["diagnostic_fiber_classes"].push_back(class_str(cls));
  }
  return j.dump();
}

std::string segment_walls_json(const SegmentWalls& walls, bool closed_end) {
  json j;
  j["closed_end"] = closed_end;
  j["crossings"] = json::array();
  for (const auto& cr : walls.crossings)
    j["crossings"].push_back(json{{"class", class_str(cr.cls)},
                                  {"kind", wall_kind_name(cr.kind)},
                                  {"s", rat_str(cr.s)}});
  j["coincident"] = json::array();
  for (const auto& [cls, kind] : walls.coincident)
    j["coincident"].push_back(json{{"class", class_str(cls)}, {"kind", wall_kind_name(kind)}});
  return j.dump();
}

namespace {

// pinned wall CSV schema: class,kind,coeff_mu,coeff_c1..cn,const
std::string wall_csv_header(const Manifold& desc) {
  std::string out = "class,kind,coeff_mu";
  for (int i = 1; i <= desc.n; ++i) out += ",coeff_c" + std::to_string(i);
  out += ",const";
  return out;
}

std::string wall_csv_row(const HomClass& cls, WallKind kind) {
  // area(u) = a*mu + sum m_i c_i + b on normalized vectors
  std::string out = format_class(cls);
  out += ",";
  out += wall_kind_name(kind);
  out += "," + std::to_string(cls.a());
  for (int i = 0; i < cls.n(); ++i) out += "," + std::to_string(cls.m()[i]);
  out += "," + std::to_string(cls.b());
  return out;
}

}  // namespace

std::string segment_walls_csv(const Manifold& desc, const SegmentWalls& walls) {
  std::string out = wall_csv_header(desc) + "\n";
  for (const auto& cr : walls.crossings) out += wall_csv_row(cr.cls, cr.kind) + "\n";
  return out;
}

namespace {

std::string coord_name(int id) { return id == 0 ? "mu" : "c" + std::to_string(id); }

}  // namespace

std::string slice_json(const Manifold& desc, const SliceArrangement& arr) {
  (void)desc;
  json j;
  j["free"] = json::array({coord_name(arr.free_x), coord_name(arr.free_y)});
  j["window"] = json{{"x", json::array({rat_str(arr.window.x0), rat_str(arr.window.x1)})},
                     {"y", json::array({rat_str(arr.window.y0), rat_str(arr.window.y1)})}};
  j["lines"] = json::array();
  for (const SliceLine& line : arr.lines) {
    json e;
    e["class"] = class_str(line.cls);
    e["equation"] = json{{"coeffs", json::array({rat_str(line.coeff_x), rat_str(line.coeff_y)})},
                         {"const", rat_str(line.cst)}};
    e["kind"] = wall_kind_name(line.kind);
    j["lines"].push_back(e);
  }
  return j.dump();
}

std::string slice_csv(const Manifold& desc, const SliceArrangement& arr) {
  std::string out = wall_csv_header(desc) + "\n";
  for (const SliceLine& line : arr.lines) out += wall_csv_row(line.cls, line.kind) + "\n";
  return out;
}

long long svg_pixel(const Rat& value, int scale) {
  Rat scaled = value * Rat(scale);
  Rat fl = scaled.floor();
  Rat frac = scaled - fl;
  long long base = fl.floor_ll();
  if (frac > Rat(1, 2)) return base + 1;
  if (frac < Rat(1, 2)) return base;
  return base % 2 == 0 ? base : base + 1;  // ties to even
}

std::string slice_svg(const Manifold& desc, const SliceArrangement& arr, int scale) {
  (void)desc;
  if (scale < 1) fail(Errc::bad_input, "svg scale must be >= 1");
  const SliceWindow& w = arr.window;
  long long width = svg_pixel(w.x1 - w.x0, scale);
  long long height = svg_pixel(w.y1 - w.y0, scale);
  auto px = [&](const Rat& x) { return svg_pixel(x - w.x0, scale); };
  auto py = [&](const Rat& y) { return svg_pixel(w.y1 - y, scale); };  // y grows upward

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\" stroke=\"black\"/>\n";

  for (const SliceLine& line : arr.lines) {
    // clip coeff_x*x + coeff_y*y + cst = 0 to the window box
    Rat ax = line.coeff_x, ay = line.coeff_y;
    std::optional<std::pair<Rat, Rat>> p0, p1;
    auto push = [&](const Rat& x, const Rat& y) {
      if (x < w.x0 || x > w.x1 || y < w.y0 || y > w.y1) return;
      if (p0 && x == p0->first && y == p0->second) return;
      if (!p0)
        p0 = {x, y};
      else if (!p1)
        p1 = {x, y};
    };
    if (!ay.is_zero()) {
      push(w.x0, (-line.cst - ax * w.x0) / ay);
      push(w.x1, (-line.cst - ax * w.x1) / ay);
    }
    if (!ax.is_zero()) {
      push((-line.cst - ay * w.y0) / ax, w.y0);
      push((-line.cst - ay * w.y1) / ax, w.y1);
    }
    if (!p0) continue;  // arrangement filter guarantees this cannot happen
    if (!p1) p1 = p0;   // touches the box in a single point
    const char* color = line.kind == WallKind::interior
                            ? "#cc0000"
                            : (line.kind == WallKind::extremal ? "#0055cc" : "#008822");
    out << "<path d=\"M " << px(p0->first) << " " << py(p0->second) << " L " << px(p1->first)
        << " " << py(p1->second) << "\" stroke=\"" << color
        << "\" stroke-width=\"1\" fill=\"none\"><title>" << format_class(line.cls) << " ("
        << wall_kind_name(line.kind) << ")</title></path>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string path_json(const InflationPath& path) {
  json j;
  j["start"] = format_area_vec(path.start);
  j["steps"] = json::array();
  for (const auto& st : path.steps)
    j["steps"].push_back(json{{"class", class_str(st.z)}, {"t", rat_str(st.t)}});
  j["end"] = format_area_vec(path.end);
  return j.dump();
}

InflationPath parse_path_json(std::string_view text, const Manifold& desc) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    fail(Errc::parse, "inflation path must be a JSON object");
  if (!j.contains("start") || !j.contains("steps") || !j.contains("end"))
    fail(Errc::parse, "inflation path needs start, steps and end");
  AreaVec start = parse_area_vec(j["start"].get<std::string>(), desc.n);
  AreaVec end = parse_area_vec(j["end"].get<std::string>(), desc.n);
  std::vector<InflationStep> steps;
  for (const json& e : j["steps"]) {
    if (!e.is_object() || !e.contains("class") || !e.contains("t"))
      fail(Errc::parse, "each step needs class and t");
    steps.push_back({class_from_json(e["class"], desc, "step"),
                     Rat::parse(e["t"].get<std::string>())});
  }
  return InflationPath{std::move(start), std::move(steps), std::move(end)};
}

std::string alternating_json(const Manifold& desc, const AreaVec& u, const HomClass& s_cls,
                             const HomClass& x_cls, const std::vector<AreaVec>& seq) {
  (void)desc;
  HomClass e = s_cls + x_cls;
  json j;
  j["E"] = class_str(e);
  j["S"] = class_str(s_cls);
  j["X"] = class_str(x_cls);
  j["gap0"] = rat_str(area(u, e) - area(u, x_cls));
  j["sequence"] = json::array();
  for (const AreaVec& v : seq) j["sequence"].push_back(format_area_vec(v));
  j["taus"] = json::array();
  Rat gap0 = area(u, e) - area(u, x_cls);
  for (std::size_t r = 1; r < seq.size(); ++r) {
    Rat tau = (Rat(1) - Rat(1) / pow2(static_cast<int>(r))) * gap0;
    j["taus"].push_back(rat_str(tau));
  }
  return j.dump();
}

std::string decomposition_json_one(const Decomposition& dec) {
  json j;
  j["total"] = class_str(dec.total);
  j["parts"] = json::array();
  for (const auto& [cls, mult] : dec.parts)
    j["parts"].push_back(json{{"class", class_str(cls)}, {"mult", mult}});
  return j.dump();
}

Decomposition parse_decomposition_json(std::string_view text, const Manifold& desc) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    fail(Errc::parse, "decomposition must be a JSON object");
  if (!j.contains("total") || !j.contains("parts"))
    fail(Errc::parse, "decomposition needs total and parts");
  Decomposition dec{class_from_json(j["total"], desc, "total"), {}};
  for (const json& e : j["parts"]) {
    if (e.is_string()) {
      dec.parts.push_back({class_from_json(e, desc, "part"), 1});
    } else if (e.is_object() && e.contains("class")) {
      long long mult = e.contains("mult") ? e["mult"].get<long long>() : 1;
      dec.parts.push_back({class_from_json(e["class"], desc, "part"), mult});
    } else {
      fail(Errc::parse, "each part is a class string or {class, mult}");
    }
  }
  return dec;
}

std::string decomposition_enum_json(const DecompEnumeration& en) {
  json j;
  j["complete"] = en.complete;
  j["count"] = en.decompositions.size();
  j["decompositions"] = json::array();
  for (const Decomposition& dec : en.decompositions)
    j["decompositions"].push_back(json::parse(decomposition_json_one(dec)));
  return j.dump();
}

std::string exc_status_json(const ExcStatus& st) {
  json j;
  switch (st.kind) {
    case ExcKind::embedded:
      j["kind"] = "embedded";
      break;
    case ExcKind::mild:
      j["kind"] = "mild";
      j["S"] = class_str(st.mild->s);
      j["X"] = class_str(st.mild->x);
      break;
    case ExcKind::bad:
      j["kind"] = "bad";
      j["reasons"] = st.bad_reasons;
      break;
  }
  return j.dump();
}

std::string cover_pairing_json(const CoverPairing& cp) {
  json j;
  j["positive_integer"] = cp.positive_integer;
  j["value"] = rat_str(cp.value);
  return j.dump();
}

JProfile parse_profile_json(std::string_view text, const Manifold& desc) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) fail(Errc::parse, "profile must be a JSON object");
  if (!j.contains("exc") || !j["exc"].is_object())
    fail(Errc::parse, "profile needs an 'exc' object");
  JProfile profile;
  for (const auto& [key, val] : j["exc"].items()) {
    HomClass cls = parse_class(key, desc);
    ExcStatus st;
    if (val.is_string() && val.get<std::string>() == "embedded") {
      st.kind = ExcKind::embedded;
    } else if (val.is_object() && val.contains("mild")) {
      const json& m = val["mild"];
      if (!m.is_object() || !m.contains("S") || !m.contains("X"))
        fail(Errc::parse, "mild status needs S and X");
      st.kind = ExcKind::mild;
      st.mild = MildData{class_from_json(m["S"], desc, "S"),
                         class_from_json(m["X"], desc, "X")};
    } else if (val.is_object() && val.contains("bad")) {
      st.kind = ExcKind::bad;
      Decomposition dec{cls, {}};
      for (const json& e : val["bad"]) {
        if (e.is_string()) {
          dec.parts.push_back({class_from_json(e, desc, "bad part"), 1});
        } else if (e.is_object() && e.contains("class")) {
          long long mult = e.contains("mult") ? e["mult"].get<long long>() : 1;
          dec.parts.push_back({class_from_json(e["class"], desc, "bad part"), mult});
        } else {
          fail(Errc::parse, "each bad part is a class string or {class, mult}");
        }
      }
      st.dec = std::move(dec);
    } else {
      fail(Errc::parse, "status for " + key + " must be \"embedded\", {mild:...} or {bad:[...]}");
    }
    profile.exc.emplace_back(std::move(cls), std::move(st));
  }
  if (j.contains("sections"))
    for (const json& s : j["sections"])
      profile.sections.push_back(class_from_json(s, desc, "section"));
  return profile;
}

std::string stratum_label_json(const StratumLabel& label) {
  json j;
  j["codim_lower_bound"] = label.codim_lower_bound;
  j["kind"] = stratum_kind_name(label.kind);
  if (label.witness) j["witness"] = class_str(*label.witness);
  return j.dump();
}

PlanHints parse_plan_hints_json(std::string_view text, const Manifold& desc) {
  PlanHints hints;
  if (trim(std::string(text)).empty()) return hints;
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) fail(Errc::parse, "hints must be a JSON object");
  if (j.contains("sections")) hints.sections = j["sections"].get<bool>();
  if (j.contains("mild_pairs"))
    for (const json& e : j["mild_pairs"]) {
      if (!e.is_object() || !e.contains("S") || !e.contains("X"))
        fail(Errc::parse, "each mild pair needs S and X");
      hints.mild_pairs.emplace_back(class_from_json(e["S"], desc, "S"),
                                    class_from_json(e["X"], desc, "X"));
    }
  return hints;
}

}  // namespace conecalc
