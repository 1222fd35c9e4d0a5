#pragma once

#include "configuration.hpp"
#include "error.hpp"
#include "gate.hpp"
#include "network.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace totnet
{

struct io_setting
{
  std::vector<node> inputs;
  node output = 0;
  std::size_t time = 0;
};

/* anything with a synchronous step and per-node bit access */
template<typename S>
concept dynamical_system = requires( S const& s, typename S::state_type x, node v, bool b ) {
  { s.size() } -> std::convertible_to<std::size_t>;
  { s.step( x ) } -> std::same_as<typename S::state_type>;
  { s.read( x, v ) } -> std::same_as<bool>;
  { s.write( x, v, b ) } -> std::same_as<typename S::state_type>;
};

/* n <= 64, state packed in one word */
class word_system
{
public:
  using state_type = std::uint64_t;

  explicit word_system( automata_network const& net ) : net_( &net )
  {
    if ( !net.has_word_kernel() )
      fail( error_kind::too_large, "word kernel needs at most 64 nodes" );
  }

  std::size_t size() const { return net_->size(); }
  state_type step( state_type x ) const { return net_->step_word( x ); }
  bool read( state_type x, node v ) const { return ( x >> v ) & 1u; }
  state_type write( state_type x, node v, bool b ) const
  {
    return b ? ( x | ( state_type{ 1 } << v ) ) : ( x & ~( state_type{ 1 } << v ) );
  }
  state_type encode( configuration const& c ) const { return c.size() ? c.word( 0 ) : 0; }

private:
  automata_network const* net_;
};

/* successor table over all 2^n states */
class table_system
{
public:
  using state_type = std::uint32_t;
  static constexpr std::size_t max_nodes = 22;

  template<typename StepFn>
  table_system( std::size_t n, StepFn&& fn ) : n_( n )
  {
    if ( n > max_nodes )
      fail( error_kind::too_large, "successor table needs at most 22 nodes" );
    next_.resize( std::size_t{ 1 } << n );
    parallel_for( 64, [&]( std::size_t c ) {
      std::size_t const lo = next_.size() * c / 64, hi = next_.size() * ( c + 1 ) / 64;
      for ( std::size_t x = lo; x < hi; ++x )
        next_[x] = static_cast<state_type>( fn( static_cast<std::uint64_t>( x ) ) );
    } );
  }

  explicit table_system( automata_network const& net )
      : table_system( net.size(), [&net]( std::uint64_t x ) { return net.step_word( x ); } )
  {
  }

  std::size_t size() const { return n_; }
  state_type step( state_type x ) const { return next_[x]; }
  bool read( state_type x, node v ) const { return ( x >> v ) & 1u; }
  state_type write( state_type x, node v, bool b ) const
  {
    return b ? ( x | ( state_type{ 1 } << v ) ) : ( x & ~( state_type{ 1 } << v ) );
  }
  state_type encode( configuration const& c ) const { return c.size() ? static_cast<state_type>( c.word( 0 ) ) : 0; }

private:
  std::size_t n_;
  std::vector<state_type> next_;
};

/* any size */
class config_system
{
public:
  using state_type = configuration;

  explicit config_system( automata_network const& net ) : net_( &net ) {}

  std::size_t size() const { return net_->size(); }
  state_type step( state_type const& x ) const { return net_->step( x ); }
  bool read( state_type const& x, node v ) const { return x[v]; }
  state_type write( state_type x, node v, bool b ) const
  {
    x.set( v, b );
    return x;
  }
  state_type encode( configuration const& c ) const { return c; }

private:
  automata_network const* net_;
};

/* y_u = xbar_u off I, y_u = z_u on I */
inline configuration perturb( configuration const& xbar, std::vector<node> const& inputs, std::vector<bool> const& z )
{
  if ( inputs.size() != z.size() )
    fail( error_kind::length_mismatch, "one value per input node" );
  for ( std::size_t a = 0; a < inputs.size(); ++a )
  {
    if ( inputs[a] >= xbar.size() )
      fail( error_kind::invalid_setting, "input node out of range" );
    for ( std::size_t b = a + 1; b < inputs.size(); ++b )
      if ( inputs[a] == inputs[b] )
        fail( error_kind::duplicate_input, "input node " + std::to_string( inputs[a] ) + " listed twice" );
  }
  auto y = xbar;
  for ( std::size_t a = 0; a < inputs.size(); ++a )
    y.set( inputs[a], z[a] );
  return y;
}

/* bits of assignment z, first input most significant */
inline std::vector<bool> assignment_bits( unsigned z, unsigned arity )
{
  std::vector<bool> bits( arity );
  for ( unsigned j = 0; j < arity; ++j )
    bits[j] = ( z >> ( arity - 1 - j ) ) & 1u;
  return bits;
}

inline void check_setting( std::size_t n, io_setting const& s )
{
  if ( s.output >= n )
    fail( error_kind::invalid_setting, "output node out of range" );
  for ( std::size_t a = 0; a < s.inputs.size(); ++a )
  {
    if ( s.inputs[a] >= n )
      fail( error_kind::invalid_setting, "input node out of range" );
    if ( s.inputs[a] == s.output )
      fail( error_kind::invalid_setting, "output node is also an input" );
    for ( std::size_t b = a + 1; b < s.inputs.size(); ++b )
      if ( s.inputs[a] == s.inputs[b] )
        fail( error_kind::invalid_setting, "inputs must be distinct" );
  }
}

/* g(y) = F^t(y)_o over all assignments */
inline gate_table realization( automata_network const& net, configuration const& xbar, io_setting const& s )
{
  check_setting( net.size(), s );
  if ( !is_fixed_point( net, xbar ) )
    fail( error_kind::not_a_fixed_point, "base configuration is not a fixed point" );
  auto const l = static_cast<unsigned>( s.inputs.size() );
  return make_table( l, [&]( unsigned z ) {
    return evolve( net, perturb( xbar, s.inputs, assignment_bits( z, l ) ), s.time )[s.output];
  } );
}

/* per-time gate multiplicities over all ordered input tuples and outputs */
struct spectrum_report
{
  std::string rule;
  std::string graph_id;
  unsigned arity = 2;
  std::size_t t_max = 0;
  /* counts[t][table bits] for t = 0..t_max; t = 0 kept for completeness */
  std::vector<std::vector<std::uint64_t>> counts;

  std::size_t table_space() const { return std::size_t{ 1 } << ( 1u << arity ); }

  std::vector<unsigned> gates_at( std::size_t t ) const
  {
    std::vector<unsigned> ids;
    if ( t < counts.size() )
      for ( std::size_t g = 0; g < counts[t].size(); ++g )
        if ( counts[t][g] )
          ids.push_back( static_cast<unsigned>( g ) );
    return ids;
  }

  std::uint64_t multiplicity( std::size_t t, unsigned g ) const
  {
    return t < counts.size() && g < counts[t].size() ? counts[t][g] : 0;
  }

  /* union over t = 1..t_max */
  std::vector<unsigned> cumulative() const
  {
    std::vector<bool> seen( table_space(), false );
    for ( std::size_t t = 1; t < counts.size(); ++t )
      for ( std::size_t g = 0; g < counts[t].size(); ++g )
        if ( counts[t][g] )
          seen[g] = true;
    std::vector<unsigned> ids;
    for ( std::size_t g = 0; g < seen.size(); ++g )
      if ( seen[g] )
        ids.push_back( static_cast<unsigned>( g ) );
    return ids;
  }

  std::size_t rho() const { return cumulative().size(); }
};

enum class observation
{
  scan, /* any t in [1, t_max] */
  final /* t = t_max only */
};

inline std::vector<unsigned> gate_set( spectrum_report const& r, observation mode )
{
  return mode == observation::scan ? r.cumulative() : r.gates_at( r.t_max );
}

inline std::size_t default_spectrum_guard( unsigned arity )
{
  switch ( arity )
  {
  case 1: return 64;
  case 2: return 16;
  default: return 12;
  }
}

/* core sweep over any dynamical system */
template<dynamical_system S>
spectrum_report spectrum_over_time( S const& sys, typename S::state_type const& xbar, std::size_t t_max, unsigned l, std::size_t guard = 0 )
{
  auto const n = sys.size();
  if ( l < 1 || l > 3 )
    fail( error_kind::bad_params, "spectrum arity must be 1, 2 or 3" );
  if ( n < l + 1 )
    fail( error_kind::invalid_setting, "need at least l+1 nodes" );
  if ( guard == 0 )
    guard = default_spectrum_guard( l );
  if ( n > guard )
    fail( error_kind::too_large, std::to_string( n ) + " nodes exceed the spectrum guard " + std::to_string( guard ) );

  spectrum_report rep;
  rep.arity = l;
  rep.t_max = t_max;
  auto const space = rep.table_space();
  auto const rows = 1u << l;

  /* one partial count per first input node, merged in index order */
  std::vector<std::vector<std::vector<std::uint64_t>>> partial( n );
  parallel_for( n, [&]( std::size_t first ) {
    auto& cnt = partial[first];
    cnt.assign( t_max + 1, std::vector<std::uint64_t>( space, 0 ) );
    std::vector<node> tuple{ static_cast<node>( first ) };
    std::vector<std::vector<typename S::state_type>> traj( rows, std::vector<typename S::state_type>( t_max + 1 ) );
    std::vector<bool> in_tuple( n, false );

    auto run_tuple = [&] {
      for ( unsigned z = 0; z < rows; ++z )
      {
        auto y = xbar;
        for ( unsigned j = 0; j < l; ++j )
          y = sys.write( y, tuple[j], ( z >> ( l - 1 - j ) ) & 1u );
        traj[z][0] = y;
        for ( std::size_t t = 1; t <= t_max; ++t )
          traj[z][t] = sys.step( traj[z][t - 1] );
      }
      for ( auto v : tuple )
        in_tuple[v] = true;
      for ( node o = 0; o < n; ++o )
      {
        if ( in_tuple[o] )
          continue;
        for ( std::size_t t = 0; t <= t_max; ++t )
        {
          std::size_t bits = 0;
          for ( unsigned z = 0; z < rows; ++z )
            if ( sys.read( traj[z][t], o ) )
              bits |= std::size_t{ 1 } << z;
          ++cnt[t][bits];
        }
      }
      for ( auto v : tuple )
        in_tuple[v] = false;
    };

    auto extend = [&]( auto&& self ) -> void {
      if ( tuple.size() == l )
      {
        run_tuple();
        return;
      }
      for ( node v = 0; v < n; ++v )
      {
        if ( std::find( tuple.begin(), tuple.end(), v ) != tuple.end() )
          continue;
        tuple.push_back( v );
        self( self );
        tuple.pop_back();
      }
    };
    extend( extend );
  } );

  rep.counts.assign( t_max + 1, std::vector<std::uint64_t>( space, 0 ) );
  for ( auto const& cnt : partial )
    for ( std::size_t t = 0; t <= t_max; ++t )
      for ( std::size_t g = 0; g < space; ++g )
        rep.counts[t][g] += cnt[t][g];
  return rep;
}

/* picks the cheapest exact kernel for the network size */
template<typename Fn>
decltype( auto ) with_system( automata_network const& net, Fn&& fn )
{
  if ( net.size() <= 16 )
  {
    table_system sys( net );
    return fn( sys );
  }
  if ( net.has_word_kernel() )
  {
    word_system sys( net );
    return fn( sys );
  }
  config_system sys( net );
  return fn( sys );
}

inline spectrum_report spectrum_over_time( automata_network const& net, configuration const& xbar, std::size_t t_max, unsigned l,
                                           std::size_t guard = 0 )
{
  xbar.check( configuration( net.size() ) );
  if ( !is_fixed_point( net, xbar ) )
    fail( error_kind::not_a_fixed_point, "base configuration is not a fixed point" );
  auto rep = with_system( net, [&]( auto const& sys ) { return spectrum_over_time( sys, sys.encode( xbar ), t_max, l, guard ); } );
  rep.rule = net.rule_label();
  return rep;
}

/* distinct tables realized at exactly time t */
inline std::vector<gate_table> spectrum_at( automata_network const& net, configuration const& xbar, std::size_t t, unsigned l, std::size_t guard = 0 )
{
  auto rep = spectrum_over_time( net, xbar, t, l, guard );
  std::vector<gate_table> out;
  for ( auto g : rep.gates_at( t ) )
    out.push_back( { l, g } );
  return out;
}

inline nlohmann::json to_json( spectrum_report const& r )
{
  nlohmann::json per_time = nlohmann::json::array();
  for ( std::size_t t = 1; t < r.counts.size(); ++t )
  {
    nlohmann::json gs = nlohmann::json::object();
    for ( std::size_t g = 0; g < r.counts[t].size(); ++g )
      if ( r.counts[t][g] )
        gs[std::to_string( g )] = r.counts[t][g];
    per_time.push_back( { { "t", t }, { "gates", gs } } );
  }
  return { { "rule", r.rule },         { "graph", r.graph_id }, { "arity", r.arity },       { "t_max", r.t_max },
           { "per_time", per_time }, { "cumulative", r.cumulative() }, { "rho", r.rho() } };
}

/* header "t,0,1,...", one row of multiplicities per time step */
inline std::string to_csv( spectrum_report const& r )
{
  std::ostringstream os;
  os << "t";
  for ( std::size_t g = 0; g < r.table_space(); ++g )
    os << ',' << g;
  os << '\n';
  for ( std::size_t t = 1; t < r.counts.size(); ++t )
  {
    os << t;
    for ( auto c : r.counts[t] )
      os << ',' << c;
    os << '\n';
  }
  return os.str();
}

} // namespace totnet
