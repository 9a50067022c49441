#pragma once

#include <stdexcept>
#include <string>

namespace spanroute {

enum class Errc {
  duplicate_edge_id,
  unknown_vertex,
  no_path_exists,
  edge_off_all_paths,
  path_explosion,
  dimension_mismatch,
  rank_deficient,
  non_convergence,
  out_of_span,
  heavy_tailed,
  invalid_b,
  invalid_c,
  cold_start,
  parse_error,
  unknown_policy,
  missing_field,
  invalid_param,
};

inline const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::duplicate_edge_id: return "DuplicateEdgeId";
    case Errc::unknown_vertex: return "UnknownVertex";
    case Errc::no_path_exists: return "NoPathExists";
    case Errc::edge_off_all_paths: return "EdgeOffAllPaths";
    case Errc::path_explosion: return "PathExplosion";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::non_convergence: return "NonConvergence";
    case Errc::out_of_span: return "OutOfSpan";
    case Errc::heavy_tailed: return "HeavyTailed";
    case Errc::invalid_b: return "InvalidB";
    case Errc::invalid_c: return "InvalidC";
    case Errc::cold_start: return "ColdStart";
    case Errc::parse_error: return "ParseError";
    case Errc::unknown_policy: return "UnknownPolicy";
    case Errc::missing_field: return "MissingField";
    case Errc::invalid_param: return "InvalidParam";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace spanroute
