#pragma once

#include "error.hpp"

#include <cstdint>
#include <string>

namespace totnet
{

/* truth table over l inputs; entry z (z_1 most significant) is bit z of `bits` */
struct gate_table
{
  unsigned arity = 2;
  std::uint64_t bits = 0;

  bool operator()( unsigned z ) const { return ( bits >> z ) & 1u; }
  std::size_t rows() const { return std::size_t{ 1 } << arity; }
  bool operator==( gate_table const& ) const = default;
  auto operator<=>( gate_table const& ) const = default;
};

/* weight 2^(2 z1 + z2): AND = 8, OR = 14, XOR = 6, NAND = 7, NOR = 1 */
inline unsigned gate_id( gate_table const& t )
{
  if ( t.arity != 2 )
    fail( error_kind::wrong_arity, "gate ids exist only for two inputs" );
  return static_cast<unsigned>( t.bits & 0xf );
}

inline gate_table gate_from_id( unsigned id )
{
  if ( id > 15 )
    fail( error_kind::bad_params, "gate id must be in 0..15" );
  return { 2, id };
}

namespace gates
{
inline constexpr unsigned FALSE_ = 0, NOR = 1, XOR = 6, NAND = 7, AND = 8, PROJ2 = 10, PROJ1 = 12, OR = 14, TRUE_ = 15;
inline constexpr gate_table NOT{ 1, 0b01 };
inline constexpr gate_table IDENTITY{ 1, 0b10 };
inline constexpr gate_table CONST0_ARITY0{ 0, 0 };
} // namespace gates

inline std::string gate_name( unsigned id )
{
  static char const* const names[16] = { "FALSE", "NOR", "NOT(x1)&x2", "NOT x1", "x1&NOT(x2)", "NOT x2", "XOR", "NAND",
                                         "AND", "XNOR", "x2", "NOT(x1)|x2", "x1", "x1|NOT(x2)", "OR", "TRUE" };
  return id < 16 ? names[id] : "?";
}

inline gate_table make_table( unsigned arity, auto&& fn )
{
  gate_table t{ arity, 0 };
  for ( unsigned z = 0; z < ( 1u << arity ); ++z )
    if ( fn( z ) )
      t.bits |= std::uint64_t{ 1 } << z;
  return t;
}

} // namespace totnet
