#pragma once

#include <string>
#include <string_view>

#include "conecalc/cone.hpp"
#include "conecalc/inflation.hpp"
#include "conecalc/strata.hpp"

namespace conecalc {

// Area-vector grammar: `mu=<rat> [f=<rat>] c=<rat>,<rat>,...`, default f=1,
// whitespace between fields; `c=` may be omitted when n = 0. expect_n < 0
// infers n from the c list.
AreaVec parse_area_vec(std::string_view text, int expect_n = -1);
std::string format_area_vec(const AreaVec& u);

// Canonical JSON: sorted keys, exact rational strings, no floats.
std::string cone_report_json(const ConeReport& r);
std::string reduced_report_json(const ReducedReport& r);
std::string pd_class_json(const AreaVec& u);
std::string class_list_json(const std::vector<HomClass>& classes);
std::string chamber_json(const Manifold& desc, const AreaVec& u,
                         const std::vector<HomClass>& signature,
                         const ChamberInterval& interval,
                         const std::vector<HomClass>* diagnostic_fiber = nullptr);
std::string segment_walls_json(const SegmentWalls& walls, bool closed_end);
std::string segment_walls_csv(const Manifold& desc, const SegmentWalls& walls);
std::string slice_json(const Manifold& desc, const SliceArrangement& arr);
std::string slice_csv(const Manifold& desc, const SliceArrangement& arr);
std::string slice_svg(const Manifold& desc, const SliceArrangement& arr, int scale);

std::string path_json(const InflationPath& path);
InflationPath parse_path_json(std::string_view text, const Manifold& desc);
std::string alternating_json(const Manifold& desc, const AreaVec& u, const HomClass& s_cls,
                             const HomClass& x_cls, const std::vector<AreaVec>& seq);

std::string decomposition_json_one(const Decomposition& dec);
Decomposition parse_decomposition_json(std::string_view text, const Manifold& desc);
std::string decomposition_enum_json(const DecompEnumeration& en);
std::string exc_status_json(const ExcStatus& st);
std::string cover_pairing_json(const CoverPairing& cp);
JProfile parse_profile_json(std::string_view text, const Manifold& desc);
std::string stratum_label_json(const StratumLabel& label);

// PlanHints JSON: {"mild_pairs":[{"S":...,"X":...}],"sections":bool}
PlanHints parse_plan_hints_json(std::string_view text, const Manifold& desc);

// Pixel coordinate for SVG rendering: value*scale rounded half-to-even.
long long svg_pixel(const Rat& value, int scale);

}  // namespace conecalc
