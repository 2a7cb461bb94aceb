#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace isolat {

// Every failure mode the library reports carries one of these codes.  The
// message is human-readable; `witness` holds element labels (or similar)
// pinpointing the offending data when that makes sense.
enum class Errc {
  invalid_input,
  not_a_lattice,
  empty_factor_list,
  empty_seed,
  empty_index_set,
  empty_list,
  size_cap_exceeded,
  cap_exceeded,
  not_isotone_input,
  dimension_out_of_range,
  not_an_embedding,
  label_clash,
  not_boolean,
  too_small,
  constancy_violated,
  not_join_hom,
  not_lower_bound,
  not_distributive_codomain,
  bounds_element,
  hypothesis_violated,
  syntax_error,
  unknown_generator,
  complement_outside_boolean,
  parse_error,
  unknown_construction,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_input: return "invalid_input";
    case Errc::not_a_lattice: return "not_a_lattice";
    case Errc::empty_factor_list: return "empty_factor_list";
    case Errc::empty_seed: return "empty_seed";
    case Errc::empty_index_set: return "empty_index_set";
    case Errc::empty_list: return "empty_list";
    case Errc::size_cap_exceeded: return "size_cap_exceeded";
    case Errc::cap_exceeded: return "cap_exceeded";
    case Errc::not_isotone_input: return "not_isotone_input";
    case Errc::dimension_out_of_range: return "dimension_out_of_range";
    case Errc::not_an_embedding: return "not_an_embedding";
    case Errc::label_clash: return "label_clash";
    case Errc::not_boolean: return "not_boolean";
    case Errc::too_small: return "too_small";
    case Errc::constancy_violated: return "constancy_violated";
    case Errc::not_join_hom: return "not_join_hom";
    case Errc::not_lower_bound: return "not_lower_bound";
    case Errc::not_distributive_codomain: return "not_distributive_codomain";
    case Errc::bounds_element: return "bounds_element";
    case Errc::hypothesis_violated: return "hypothesis_violated";
    case Errc::syntax_error: return "syntax_error";
    case Errc::unknown_generator: return "unknown_generator";
    case Errc::complement_outside_boolean: return "complement_outside_boolean";
    case Errc::parse_error: return "parse_error";
    case Errc::unknown_construction: return "unknown_construction";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::vector<std::string> witness = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const { return code_; }
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  Errc code_;
  std::vector<std::string> witness_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg, std::vector<std::string> w = {}) {
  throw Error(c, msg, std::move(w));
}

// Operations that enumerate a structure refuse to build anything larger than
// this unless the caller raises the cap explicitly.
inline constexpr std::size_t kDefaultSizeCap = 4096;

}  // namespace isolat
