#pragma once

#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "spectrum.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace totnet
{

/* ring of cells over {0..5}: class = cell / 2 (regular, right-modified, left-modified), activity = cell odd */
class bull_config
{
public:
  bull_config() = default;
  explicit bull_config( std::vector<std::uint8_t> cells ) : cells_( std::move( cells ) ) { validate(); }

  static bull_config from_string( std::string_view s )
  {
    std::vector<std::uint8_t> cells;
    for ( char ch : s )
    {
      if ( ch == '\n' || ch == '\r' || ch == ' ' )
        continue;
      if ( ch < '0' || ch > '5' )
        fail( error_kind::bad_alphabet, std::string( "cell symbol '" ) + ch + "' outside 0-5" );
      cells.push_back( static_cast<std::uint8_t>( ch - '0' ) );
    }
    return bull_config( std::move( cells ) );
  }

  /* classes and activity word -> config */
  static bull_config from_layout( std::vector<std::uint8_t> const& classes, std::uint64_t activity )
  {
    std::vector<std::uint8_t> cells( classes.size() );
    for ( std::size_t i = 0; i < classes.size(); ++i )
      cells[i] = static_cast<std::uint8_t>( 2 * classes[i] + ( ( activity >> i ) & 1u ) );
    return bull_config( std::move( cells ) );
  }

  std::size_t size() const { return cells_.size(); }
  std::uint8_t operator[]( std::size_t i ) const { return cells_[i]; }
  std::vector<std::uint8_t> const& cells() const { return cells_; }
  bool active( std::size_t i ) const { return cells_[i] & 1u; }
  std::uint8_t cls( std::size_t i ) const { return cells_[i] / 2; }

  std::vector<std::uint8_t> layout() const
  {
    std::vector<std::uint8_t> l( cells_.size() );
    for ( std::size_t i = 0; i < l.size(); ++i )
      l[i] = cls( i );
    return l;
  }

  std::uint64_t activity() const
  {
    std::uint64_t w = 0;
    for ( std::size_t i = 0; i < cells_.size() && i < 64; ++i )
      w |= std::uint64_t{ active( i ) } << i;
    return w;
  }

  std::string to_string() const
  {
    std::string s;
    for ( auto c : cells_ )
      s += static_cast<char>( '0' + c );
    return s;
  }

  bool operator==( bull_config const& ) const = default;
  bool operator<( bull_config const& o ) const { return cells_ < o.cells_; }

private:
  void validate() const
  {
    for ( auto c : cells_ )
      if ( c > 5 )
        fail( error_kind::bad_alphabet, "cell value " + std::to_string( c ) + " outside 0-5" );
  }

  std::vector<std::uint8_t> cells_;
};

inline constexpr std::size_t bull_min_cells = 5;

namespace detail
{
inline void check_bull_size( std::size_t n )
{
  if ( n < bull_min_cells )
    fail( error_kind::bad_params, "bull ring needs at least 5 cells" );
}

/* neighbourhood sum of cell i under its class */
template<typename Active>
unsigned bull_sum( std::size_t n, std::size_t i, std::uint8_t cls, Active&& act )
{
  unsigned s = act( ( i + 1 ) % n ) + act( ( i + n - 1 ) % n );
  if ( cls == 1 )
    s += act( ( i + 2 ) % n );
  else if ( cls == 2 )
    s += act( ( i + n - 2 ) % n );
  return s;
}
} // namespace detail

/* next activity word for a fixed layout */
inline std::uint64_t bull_activity_step( std::vector<std::uint8_t> const& classes, std::uint64_t x )
{
  auto const n = classes.size();
  auto act = [x]( std::size_t j ) { return static_cast<unsigned>( ( x >> j ) & 1u ); };
  std::uint64_t y = 0;
  for ( std::size_t i = 0; i < n; ++i )
    if ( detail::bull_sum( n, i, classes[i], act ) == 1 )
      y |= std::uint64_t{ 1 } << i;
  return y;
}

inline bull_config bull_step( bull_config const& c )
{
  auto const n = c.size();
  detail::check_bull_size( n );
  std::vector<std::uint8_t> next( n );
  auto act = [&c]( std::size_t j ) { return static_cast<unsigned>( c.active( j ) ); };
  for ( std::size_t i = 0; i < n; ++i )
    next[i] = static_cast<std::uint8_t>( 2 * c.cls( i ) + ( detail::bull_sum( n, i, c.cls( i ), act ) == 1 ) );
  return bull_config( std::move( next ) );
}

inline bull_config bull_evolve( bull_config c, std::size_t t )
{
  for ( std::size_t s = 0; s < t; ++s )
    c = bull_step( c );
  return c;
}

inline bool bull_is_fixed_point( bull_config const& c ) { return bull_step( c ) == c; }

/* tabulated activity dynamics of one layout; flipping an activity bit keeps the class */
inline table_system bull_system( std::vector<std::uint8_t> const& classes )
{
  detail::check_bull_size( classes.size() );
  return table_system( classes.size(), [&classes]( std::uint64_t x ) { return bull_activity_step( classes, x ); } );
}

inline std::vector<std::uint8_t> random_bull_cells( std::size_t n, rng_engine& rng )
{
  std::vector<std::uint8_t> cells( n );
  for ( auto& c : cells )
    c = static_cast<std::uint8_t>( uniform_below( rng, 6 ) );
  return cells;
}

/* random modified cells confined to three length-8 areas (start, middle, end); regular elsewhere */
inline bull_config three_areas_config( std::size_t n, std::uint64_t seed )
{
  if ( n < 24 )
    fail( error_kind::bad_params, "three-area layout needs at least 24 cells" );
  rng_engine rng( seed );
  std::vector<std::uint8_t> cells( n );
  std::size_t const mid = n / 2 - 4;
  for ( std::size_t i = 0; i < n; ++i )
  {
    bool const area = i < 8 || ( i >= mid && i < mid + 8 ) || i >= n - 8;
    cells[i] = static_cast<std::uint8_t>( area ? uniform_below( rng, 6 ) : uniform_below( rng, 2 ) );
  }
  return bull_config( std::move( cells ) );
}

/* random starts evolved t_max steps; random layouts unless one is given */
inline std::vector<bull_config> bull_sample_fixed_points( std::size_t n, std::size_t trials, std::size_t t_max,
                                                          std::optional<std::vector<std::uint8_t>> const& layout, std::uint64_t seed )
{
  detail::check_bull_size( n );
  if ( layout && layout->size() != n )
    fail( error_kind::length_mismatch, "layout length differs from ring size" );
  if ( layout )
    for ( auto c : *layout )
      if ( c > 2 )
        fail( error_kind::bad_alphabet, "layout classes must be 0, 1 or 2" );
  std::vector<std::optional<bull_config>> found( trials );
  parallel_for( trials, [&]( std::size_t i ) {
    rng_engine rng( derive_seed( seed, i, 0xb0 ) );
    auto cells = random_bull_cells( n, rng );
    if ( layout )
      for ( std::size_t k = 0; k < n; ++k )
        cells[k] = static_cast<std::uint8_t>( 2 * ( *layout )[k] + ( cells[k] & 1u ) );
    auto x = bull_evolve( bull_config( std::move( cells ) ), t_max );
    if ( bull_is_fixed_point( x ) )
      found[i] = std::move( x );
  } );
  std::vector<bull_config> out;
  for ( auto& f : found )
    if ( f )
      out.push_back( std::move( *f ) );
  std::sort( out.begin(), out.end() );
  out.erase( std::unique( out.begin(), out.end() ), out.end() );
  return out;
}

inline spectrum_report bull_spectrum( bull_config const& fp, std::size_t t_max, unsigned l = 2 )
{
  if ( !bull_is_fixed_point( fp ) )
    fail( error_kind::not_a_fixed_point, "bull configuration is not a fixed point" );
  auto sys = bull_system( fp.layout() );
  auto rep = spectrum_over_time( sys, static_cast<table_system::state_type>( fp.activity() ), t_max, l, 22 );
  rep.rule = "1Bull";
  rep.graph_id = fp.to_string();
  return rep;
}

struct bull_experiment_config
{
  std::size_t n = 12;
  std::size_t trials = 2000;
  std::size_t t_max = 100;
  std::uint64_t seed = 1;
  std::optional<std::vector<std::uint8_t>> layout; /* none: uniform random layouts */
  observation obs = observation::scan;
};

struct bull_report
{
  bull_experiment_config config;
  std::vector<bull_config> fixed_points;
  std::vector<std::vector<unsigned>> gate_sets;
  std::vector<std::uint64_t> counts = std::vector<std::uint64_t>( 16, 0 );
  std::size_t champion = 0;

  std::vector<unsigned> pooled() const
  {
    std::vector<unsigned> ids;
    for ( unsigned g = 0; g < counts.size(); ++g )
      if ( counts[g] )
        ids.push_back( g );
    return ids;
  }

  std::vector<unsigned> percent() const
  {
    auto const pop = fixed_points.size();
    std::vector<unsigned> out;
    for ( auto c : counts )
      out.push_back( pop ? static_cast<unsigned>( ( 200 * c + pop ) / ( 2 * pop ) ) : 0u );
    return out;
  }
};

inline bull_report run_bull_experiment( bull_experiment_config const& cfg )
{
  if ( cfg.trials < 1 || cfg.t_max < 1 )
    fail( error_kind::bad_params, "bull experiment needs trials >= 1 and t_max >= 1" );
  bull_report rep;
  rep.config = cfg;
  rep.fixed_points = bull_sample_fixed_points( cfg.n, cfg.trials, cfg.t_max, cfg.layout, cfg.seed );
  rep.gate_sets.resize( rep.fixed_points.size() );
  parallel_for( rep.fixed_points.size(), [&]( std::size_t i ) {
    rep.gate_sets[i] = gate_set( bull_spectrum( rep.fixed_points[i], cfg.t_max ), cfg.obs );
  } );
  for ( std::size_t i = 0; i < rep.gate_sets.size(); ++i )
  {
    for ( auto g : rep.gate_sets[i] )
      ++rep.counts[g];
    if ( rep.gate_sets[i].size() > rep.gate_sets[rep.champion].size() )
      rep.champion = i;
  }
  return rep;
}

inline nlohmann::json to_json( bull_report const& r )
{
  nlohmann::json cfg{ { "n", r.config.n },
                      { "trials", r.config.trials },
                      { "t_max", r.config.t_max },
                      { "seed", r.config.seed },
                      { "observation", r.config.obs == observation::scan ? "scan" : "final" } };
  if ( r.config.layout )
  {
    std::string s;
    for ( auto c : *r.config.layout )
      s += static_cast<char>( '0' + c );
    cfg["layout"] = s;
  }
  else
    cfg["layout"] = "random";
  nlohmann::json fps = nlohmann::json::array();
  for ( std::size_t i = 0; i < r.fixed_points.size(); ++i )
    fps.push_back( { { "cells", r.fixed_points[i].to_string() }, { "gates", r.gate_sets[i] } } );
  nlohmann::json j{ { "config", cfg },          { "seed", r.config.seed },   { "fixed_points", r.fixed_points.size() },
                    { "counts", r.counts },     { "percent", r.percent() }, { "pooled", r.pooled() },
                    { "population", fps } };
  if ( !r.fixed_points.empty() )
    j["champion"] = { { "cells", r.fixed_points[r.champion].to_string() }, { "gates", r.gate_sets[r.champion] } };
  return j;
}

/* one "1Bull" row of percentages in the rule,0..15 layout */
inline std::string to_csv( bull_report const& r )
{
  std::ostringstream os;
  os << "rule,fixed_points";
  for ( int g = 0; g < 16; ++g )
    os << ',' << g;
  os << "\n1Bull," << r.fixed_points.size();
  for ( auto v : r.percent() )
    os << ',' << v;
  os << '\n';
  return os.str();
}

} // namespace totnet
