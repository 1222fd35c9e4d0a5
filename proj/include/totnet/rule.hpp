#pragma once

#include "error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace totnet
{

enum class rule_kind
{
  explicit_set,
  threshold,
  majority,
  parity,
  disjunctive,
  conjunctive,
  isolated,
  interval
};

/* totalistic rule class; resolved per node against its degree */
struct rule_spec
{
  rule_kind kind = rule_kind::explicit_set;
  std::vector<unsigned> values; /* explicit_set, isolated */
  unsigned alpha = 0;           /* threshold theta, isolated/interval alpha */
  unsigned beta = 0;            /* interval */

  static rule_spec explicit_set( std::vector<unsigned> vs )
  {
    std::sort( vs.begin(), vs.end() );
    vs.erase( std::unique( vs.begin(), vs.end() ), vs.end() );
    if ( vs.empty() || vs.front() == 0 )
      fail( error_kind::bad_rule, "explicit set needs positive values" );
    return { rule_kind::explicit_set, std::move( vs ), 0, 0 };
  }
  static rule_spec threshold( unsigned theta )
  {
    if ( theta == 0 )
      fail( error_kind::bad_rule, "threshold must be positive" );
    return { rule_kind::threshold, {}, theta, 0 };
  }
  static rule_spec majority() { return { rule_kind::majority, {}, 0, 0 }; }
  static rule_spec parity() { return { rule_kind::parity, {}, 0, 0 }; }
  static rule_spec disjunctive() { return { rule_kind::disjunctive, {}, 0, 0 }; }
  static rule_spec conjunctive() { return { rule_kind::conjunctive, {}, 0, 0 }; }
  static rule_spec isolated( unsigned alpha, std::vector<unsigned> vs = {} )
  {
    vs.push_back( alpha );
    std::sort( vs.begin(), vs.end() );
    vs.erase( std::unique( vs.begin(), vs.end() ), vs.end() );
    if ( alpha < 3 )
      fail( error_kind::bad_rule, "isolated rule needs alpha >= 3" );
    for ( auto v : vs )
      if ( v != alpha && v + 2 >= alpha && v <= alpha + 1 )
        fail( error_kind::bad_rule, "isolated window violated by value " + std::to_string( v ) );
    if ( vs.front() == 0 )
      fail( error_kind::bad_rule, "activation values must be positive" );
    return { rule_kind::isolated, std::move( vs ), alpha, 0 };
  }
  static rule_spec interval( unsigned alpha, unsigned beta )
  {
    if ( alpha == 0 || alpha > beta )
      fail( error_kind::bad_rule, "interval needs 1 <= alpha <= beta" );
    return { rule_kind::interval, {}, alpha, beta };
  }

  /* activation set of a node with degree d */
  std::vector<unsigned> resolve( std::size_t d ) const
  {
    auto const deg = static_cast<unsigned>( d );
    std::vector<unsigned> out;
    auto range = [&]( unsigned lo, unsigned hi ) {
      for ( unsigned s = std::max( lo, 1u ); s <= hi; ++s )
        out.push_back( s );
    };
    switch ( kind )
    {
    case rule_kind::disjunctive: range( 1, deg ); break;
    case rule_kind::conjunctive: range( deg, deg ); break;
    case rule_kind::majority: range( ( deg + 1 ) / 2, deg ); break;
    case rule_kind::parity:
      for ( unsigned s = 1; s <= deg; s += 2 )
        out.push_back( s );
      break;
    case rule_kind::threshold: range( alpha, deg ); break;
    case rule_kind::interval:
      if ( deg <= beta )
        fail( error_kind::interval_degree_too_small, "degree " + std::to_string( deg ) + " <= beta " + std::to_string( beta ) );
      range( alpha, beta );
      break;
    case rule_kind::explicit_set:
    case rule_kind::isolated:
      for ( auto v : values )
        if ( v >= 1 && v <= deg )
          out.push_back( v );
      break;
    }
    return out;
  }

  bool operator==( rule_spec const& ) const = default;
};

inline std::string to_string( rule_spec const& r )
{
  auto join = []( std::vector<unsigned> const& vs, bool comma ) {
    std::string s;
    for ( auto v : vs )
    {
      if ( comma && !s.empty() )
        s += ',';
      s += std::to_string( v );
    }
    return s;
  };
  switch ( r.kind )
  {
  case rule_kind::explicit_set:
  {
    bool const digits = std::all_of( r.values.begin(), r.values.end(), []( unsigned v ) { return v <= 9; } );
    return digits ? join( r.values, false ) : "set:" + join( r.values, true );
  }
  case rule_kind::threshold: return "threshold:" + std::to_string( r.alpha );
  case rule_kind::majority: return "majority";
  case rule_kind::parity: return "parity";
  case rule_kind::disjunctive: return "disjunctive";
  case rule_kind::conjunctive: return "conjunctive";
  case rule_kind::isolated:
  {
    std::string s = "isolated:" + std::to_string( r.alpha );
    if ( r.values.size() > 1 )
      s += ":" + join( r.values, true );
    return s;
  }
  case rule_kind::interval: return "interval:" + std::to_string( r.alpha ) + ":" + std::to_string( r.beta );
  }
  return "?";
}

namespace detail
{
inline unsigned parse_uint( std::string_view s )
{
  unsigned v = 0;
  auto [p, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
  if ( ec != std::errc() || p != s.data() + s.size() || s.empty() )
    fail( error_kind::bad_rule, "expected a number, got '" + std::string( s ) + "'" );
  return v;
}

inline std::vector<std::string_view> split( std::string_view s, char sep )
{
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while ( true )
  {
    auto pos = s.find( sep, start );
    parts.push_back( s.substr( start, pos == std::string_view::npos ? std::string_view::npos : pos - start ) );
    if ( pos == std::string_view::npos )
      break;
    start = pos + 1;
  }
  return parts;
}

inline std::vector<unsigned> parse_list( std::string_view s )
{
  std::vector<unsigned> vs;
  for ( auto p : split( s, ',' ) )
    vs.push_back( parse_uint( p ) );
  return vs;
}
} // namespace detail

inline rule_spec parse_rule( std::string_view text )
{
  if ( text.empty() )
    fail( error_kind::bad_rule, "empty rule string" );
  if ( std::all_of( text.begin(), text.end(), []( char c ) { return c >= '0' && c <= '9'; } ) )
  {
    std::vector<unsigned> vs;
    for ( char c : text )
      vs.push_back( static_cast<unsigned>( c - '0' ) );
    return rule_spec::explicit_set( vs );
  }
  auto parts = detail::split( text, ':' );
  auto const head = parts[0];
  auto want = [&]( std::size_t lo, std::size_t hi ) {
    if ( parts.size() < lo || parts.size() > hi )
      fail( error_kind::bad_rule, "wrong number of fields in '" + std::string( text ) + "'" );
  };
  if ( head == "disjunctive" ) { want( 1, 1 ); return rule_spec::disjunctive(); }
  if ( head == "conjunctive" ) { want( 1, 1 ); return rule_spec::conjunctive(); }
  if ( head == "majority" ) { want( 1, 1 ); return rule_spec::majority(); }
  if ( head == "parity" ) { want( 1, 1 ); return rule_spec::parity(); }
  if ( head == "threshold" ) { want( 2, 2 ); return rule_spec::threshold( detail::parse_uint( parts[1] ) ); }
  if ( head == "set" ) { want( 2, 2 ); return rule_spec::explicit_set( detail::parse_list( parts[1] ) ); }
  if ( head == "interval" )
  {
    want( 3, 3 );
    return rule_spec::interval( detail::parse_uint( parts[1] ), detail::parse_uint( parts[2] ) );
  }
  if ( head == "isolated" )
  {
    want( 2, 3 );
    auto const a = detail::parse_uint( parts[1] );
    return rule_spec::isolated( a, parts.size() == 3 ? detail::parse_list( parts[2] ) : std::vector<unsigned>{} );
  }
  fail( error_kind::bad_rule, "unknown rule '" + std::string( text ) + "'" );
}

/* 1,2,3,4,12,13,...,1234 */
inline std::vector<std::string> default_rule_list()
{
  return { "1", "2", "3", "4", "12", "13", "14", "23", "24", "34", "123", "124", "134", "234", "1234" };
}

} // namespace totnet
