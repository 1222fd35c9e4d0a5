#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace totnet
{

enum class error_kind
{
  length_mismatch,
  empty_graph,
  interval_degree_too_small,
  bad_rule,
  too_large,
  invalid_setting,
  duplicate_input,
  not_a_fixed_point,
  wrong_arity,
  unknown_kind,
  bad_params,
  construction_failed,
  cycle,
  fanout_exceeded,
  unknown_gate,
  dangling_wire,
  parse_error,
  layer_parity,
  mode_mismatch,
  not_layerized,
  arity_mismatch,
  bad_alphabet,
  io_error,
  format_error
};

inline std::string_view to_string( error_kind k )
{
  switch ( k )
  {
  case error_kind::length_mismatch: return "LengthMismatch";
  case error_kind::empty_graph: return "EmptyGraph";
  case error_kind::interval_degree_too_small: return "IntervalDegreeTooSmall";
  case error_kind::bad_rule: return "BadRule";
  case error_kind::too_large: return "TooLarge";
  case error_kind::invalid_setting: return "InvalidSetting";
  case error_kind::duplicate_input: return "DuplicateInput";
  case error_kind::not_a_fixed_point: return "NotAFixedPoint";
  case error_kind::wrong_arity: return "WrongArity";
  case error_kind::unknown_kind: return "UnknownKind";
  case error_kind::bad_params: return "BadParams";
  case error_kind::construction_failed: return "ConstructionFailed";
  case error_kind::cycle: return "Cycle";
  case error_kind::fanout_exceeded: return "FanoutExceeded";
  case error_kind::unknown_gate: return "UnknownGate";
  case error_kind::dangling_wire: return "DanglingWire";
  case error_kind::parse_error: return "ParseError";
  case error_kind::layer_parity: return "LayerParity";
  case error_kind::mode_mismatch: return "ModeMismatch";
  case error_kind::not_layerized: return "NotLayerized";
  case error_kind::arity_mismatch: return "ArityMismatch";
  case error_kind::bad_alphabet: return "BadAlphabet";
  case error_kind::io_error: return "IoError";
  case error_kind::format_error: return "FormatError";
  }
  return "Unknown";
}

class error : public std::runtime_error
{
public:
  error( error_kind kind, std::string const& what )
      : std::runtime_error( std::string( to_string( kind ) ) + ": " + what ), kind_( kind )
  {
  }

  error_kind kind() const noexcept { return kind_; }

private:
  error_kind kind_;
};

[[noreturn]] inline void fail( error_kind kind, std::string const& what )
{
  throw error( kind, what );
}

} // namespace totnet
