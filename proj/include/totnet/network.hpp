#pragma once

#include "configuration.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "rule.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace totnet
{

/* graph plus resolved per-node activation sets I_v within {1..deg(v)} */
class automata_network
{
public:
  automata_network() = default;

  automata_network( graph g, rule_spec const& rule )
      : automata_network( std::move( g ), std::vector<rule_spec>{ rule }, to_string( rule ) )
  {
  }

  /* one rule per node, or a single rule for all */
  automata_network( graph g, std::vector<rule_spec> rules, std::string label = {} )
      : g_( std::move( g ) ), rules_( std::move( rules ) ), label_( std::move( label ) )
  {
    if ( g_.size() == 0 )
      fail( error_kind::empty_graph, "network needs at least one node" );
    if ( rules_.size() != 1 && rules_.size() != g_.size() )
      fail( error_kind::length_mismatch, "need one rule or one rule per node" );
    if ( label_.empty() )
      label_ = rules_.size() == 1 ? to_string( rules_[0] ) : "mixed";
    offset_.resize( g_.size() + 1 );
    for ( node v = 0; v < g_.size(); ++v )
    {
      offset_[v] = table_.size();
      auto const d = g_.degree( v );
      std::vector<unsigned> set;
      try
      {
        set = rule_of( v ).resolve( d );
      }
      catch ( error const& e )
      {
        if ( e.kind() == error_kind::interval_degree_too_small )
          fail( e.kind(), "node " + std::to_string( v ) + ": " + e.what() );
        throw;
      }
      table_.resize( table_.size() + d + 1, 0 );
      for ( auto s : set )
        table_[offset_[v] + s] = 1;
    }
    offset_[g_.size()] = table_.size();
    if ( g_.size() <= 64 )
    {
      masks_.resize( g_.size(), 0 );
      for ( node v = 0; v < g_.size(); ++v )
        for ( auto u : g_.neighbors( v ) )
          masks_[v] |= std::uint64_t{ 1 } << u;
    }
  }

  graph const& topology() const noexcept { return g_; }
  std::size_t size() const noexcept { return g_.size(); }
  std::string const& rule_label() const noexcept { return label_; }
  std::vector<rule_spec> const& rules() const noexcept { return rules_; }
  rule_spec const& rule_of( node v ) const { return rules_.size() == 1 ? rules_[0] : rules_[v]; }

  bool activates( node v, std::size_t sum ) const
  {
    auto const idx = offset_[v] + sum;
    return idx < offset_[v + 1] && table_[idx];
  }

  std::vector<unsigned> activation_set( node v ) const
  {
    std::vector<unsigned> s;
    for ( std::size_t k = 1; k < offset_[v + 1] - offset_[v]; ++k )
      if ( table_[offset_[v] + k] )
        s.push_back( static_cast<unsigned>( k ) );
    return s;
  }

  configuration step( configuration const& x ) const
  {
    if ( x.size() != size() )
      fail( error_kind::length_mismatch, "configuration has " + std::to_string( x.size() ) + " nodes, network has " + std::to_string( size() ) );
    configuration y( size() );
    for ( node v = 0; v < size(); ++v )
    {
      std::size_t sum = 0;
      for ( auto u : g_.neighbors( v ) )
        sum += x[u];
      if ( table_[offset_[v] + sum] )
        y.set( v );
    }
    return y;
  }

  /* word kernel for n <= 64; node i is bit i */
  bool has_word_kernel() const noexcept { return !masks_.empty(); }

  std::uint64_t step_word( std::uint64_t x ) const
  {
    std::uint64_t y = 0;
    for ( std::size_t v = 0; v < masks_.size(); ++v )
      if ( table_[offset_[v] + static_cast<std::size_t>( std::popcount( x & masks_[v] ) )] )
        y |= std::uint64_t{ 1 } << v;
    return y;
  }

private:
  graph g_;
  std::vector<rule_spec> rules_;
  std::string label_;
  std::vector<std::size_t> offset_;
  std::vector<std::uint8_t> table_;
  std::vector<std::uint64_t> masks_;
};

inline configuration step( automata_network const& net, configuration const& x )
{
  return net.step( x );
}

inline configuration evolve( automata_network const& net, configuration x, std::size_t t )
{
  if ( x.size() != net.size() )
    fail( error_kind::length_mismatch, "configuration length does not match network" );
  for ( std::size_t s = 0; s < t; ++s )
    x = net.step( x );
  return x;
}

/* t+1 entries, x first */
inline std::vector<configuration> trajectory( automata_network const& net, configuration x, std::size_t t )
{
  if ( x.size() != net.size() )
    fail( error_kind::length_mismatch, "configuration length does not match network" );
  std::vector<configuration> tr;
  tr.reserve( t + 1 );
  tr.push_back( x );
  for ( std::size_t s = 0; s < t; ++s )
    tr.push_back( net.step( tr.back() ) );
  return tr;
}

inline bool is_fixed_point( automata_network const& net, configuration const& x )
{
  return net.step( x ) == x;
}

inline constexpr std::size_t exhaustive_guard = 24;

/* all x with F(x) = x, in canonical order */
inline std::vector<configuration> enumerate_fixed_points( automata_network const& net, std::size_t guard = exhaustive_guard )
{
  auto const n = net.size();
  if ( n > guard || n > 62 )
    fail( error_kind::too_large, "exhaustive scan over 2^" + std::to_string( n ) + " states exceeds the guard" );
  std::uint64_t const total = std::uint64_t{ 1 } << n;
  unsigned const chunks = 64;
  std::vector<std::vector<std::uint64_t>> found( chunks );
  parallel_for( chunks, [&]( std::size_t c ) {
    std::uint64_t const lo = total * c / chunks, hi = total * ( c + 1 ) / chunks;
    for ( std::uint64_t x = lo; x < hi; ++x )
      if ( net.step_word( x ) == x )
        found[c].push_back( x );
  } );
  std::vector<configuration> fps;
  for ( auto const& part : found )
    for ( auto x : part )
      fps.push_back( configuration::from_word( x, n ) );
  std::sort( fps.begin(), fps.end() );
  return fps;
}

inline configuration random_configuration( std::size_t n, rng_engine& rng )
{
  configuration c( n );
  for ( std::size_t i = 0; i < n; ++i )
    c.set( i, coin( rng ) );
  return c;
}

/* uniform starts evolved t_max steps; keeps the fixed endpoints, deduplicated and sorted */
inline std::vector<configuration> sample_fixed_points( automata_network const& net, std::size_t trials, std::size_t t_max, std::uint64_t seed )
{
  if ( trials < 1 || t_max < 1 )
    fail( error_kind::bad_params, "sampling needs trials >= 1 and t_max >= 1" );
  std::vector<std::optional<configuration>> results( trials );
  parallel_for( trials, [&]( std::size_t i ) {
    rng_engine rng( derive_seed( seed, i, 0x5a ) );
    auto x = random_configuration( net.size(), rng );
    if ( net.has_word_kernel() )
    {
      auto w = x.words()[0];
      for ( std::size_t s = 0; s < t_max; ++s )
        w = net.step_word( w );
      if ( net.step_word( w ) == w )
        results[i] = configuration::from_word( w, net.size() );
    }
    else
    {
      x = evolve( net, x, t_max );
      if ( is_fixed_point( net, x ) )
        results[i] = x;
    }
  } );
  std::vector<configuration> fps;
  for ( auto& r : results )
    if ( r )
      fps.push_back( std::move( *r ) );
  std::sort( fps.begin(), fps.end() );
  fps.erase( std::unique( fps.begin(), fps.end() ), fps.end() );
  return fps;
}

} // namespace totnet
