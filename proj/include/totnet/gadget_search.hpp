#pragma once

#include "gadget.hpp"
#include "parallel.hpp"
#include "rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>
#include <optional>
#include <utility>
#include <vector>

namespace totnet
{

/* what to look for: inputs are nodes 0..l-1, outputs follow, an optional active clique sits last */
struct search_spec
{
  gate_table target = gate_from_id( gates::AND );
  std::size_t t_star = 2;
  std::optional<rule_spec> rule; /* none: per-node thresholds 1..max_threshold */
  unsigned max_threshold = 2;
  std::size_t outputs = 1;
  std::size_t clique = 0;
  /* allow edges between two terminals (inputs/outputs) */
  bool terminal_edges = false;
};

struct search_stats
{
  std::size_t examined = 0;
  std::size_t passed = 0;
  std::size_t max_nodes = 0;
  bool exhaustive = true;
};

struct search_result
{
  std::optional<gadget> found;
  search_stats stats;
};

namespace detail
{
struct candidate
{
  std::vector<edge> edges;
  std::vector<unsigned> theta;

  bool operator<( candidate const& o ) const { return std::tie( edges, theta ) < std::tie( o.edges, o.theta ); }
};

/* bit-parallel evaluator over at most 32 nodes */
struct search_kernel
{
  search_spec const* spec;
  std::size_t n;
  std::vector<edge> pairs;    /* free pairs, lexicographic */
  std::vector<edge> fixed;    /* clique edges */
  std::uint32_t base = 0;
  std::uint32_t clique_mask = 0;
  std::size_t degree_bound;

  bool check( std::uint64_t emask, std::vector<unsigned> const& theta ) const
  {
    std::uint32_t adj[32] = {};
    auto link = [&]( edge e ) {
      adj[e.first] |= 1u << e.second;
      adj[e.second] |= 1u << e.first;
    };
    for ( auto e : fixed )
      link( e );
    for ( std::size_t k = 0; k < pairs.size(); ++k )
      if ( ( emask >> k ) & 1u )
        link( pairs[k] );
    std::uint32_t act[32];
    for ( std::size_t v = 0; v < n; ++v )
    {
      auto const d = static_cast<unsigned>( std::popcount( adj[v] ) );
      if ( d > degree_bound )
        return false;
      act[v] = 0;
      if ( spec->rule )
      {
        auto const& r = *spec->rule;
        if ( r.kind == rule_kind::interval && d <= r.beta )
          return false;
        for ( auto s : r.resolve( d ) )
          act[v] |= 1u << s;
      }
      else
        for ( unsigned s = theta[v]; s <= d; ++s )
          act[v] |= 1u << s;
    }
    auto const l = spec->target.arity;
    for ( unsigned z = 0; z < ( 1u << l ); ++z )
    {
      std::uint32_t x = base;
      for ( unsigned j = 0; j < l; ++j )
        if ( ( z >> ( l - 1 - j ) ) & 1u )
          x |= 1u << j;
      for ( std::size_t s = 0; s < spec->t_star; ++s )
      {
        std::uint32_t y = 0;
        for ( std::size_t v = 0; v < n; ++v )
          y |= ( ( act[v] >> std::popcount( x & adj[v] ) ) & 1u ) << v;
        x = y;
        if ( ( x & clique_mask ) != clique_mask )
          return false;
      }
      bool const want = spec->target( z );
      for ( std::size_t o = 0; o < spec->outputs; ++o )
        if ( ( ( x >> ( l + o ) ) & 1u ) != want )
          return false;
    }
    return true;
  }

  candidate make( std::uint64_t emask, std::vector<unsigned> const& theta ) const
  {
    candidate c;
    c.edges = fixed;
    for ( std::size_t k = 0; k < pairs.size(); ++k )
      if ( ( emask >> k ) & 1u )
        c.edges.push_back( pairs[k] );
    std::sort( c.edges.begin(), c.edges.end() );
    if ( !spec->rule )
      c.theta = theta;
    return c;
  }
};

inline std::vector<unsigned> decode_theta( std::uint64_t code, std::size_t n, unsigned max_theta )
{
  std::vector<unsigned> th( n );
  for ( std::size_t v = 0; v < n; ++v )
  {
    th[v] = 1 + static_cast<unsigned>( code % max_theta );
    code /= max_theta;
  }
  return th;
}
} // namespace detail

inline constexpr std::size_t search_exhaustive_nodes = 7;
inline constexpr std::size_t search_max_budget = 12;

/* smallest node count first; exhaustive up to 7 nodes, seeded sampling beyond;
   ties resolved by the lexicographically smallest edge set (then thresholds) */
inline search_result search_gadget( search_spec const& spec, std::size_t node_budget, std::size_t degree_bound, std::uint64_t seed,
                                    std::size_t samples = 200000 )
{
  search_result res;
  auto const l = spec.target.arity;
  if ( l < 1 || l > 2 )
    fail( error_kind::bad_params, "search supports arity 1 or 2" );
  if ( node_budget > search_max_budget )
    fail( error_kind::bad_params, "node budget above 12" );
  if ( !spec.rule && spec.max_threshold < 1 )
    fail( error_kind::bad_params, "max_threshold must be positive" );
  std::size_t const min_nodes = l + spec.outputs + spec.clique;

  for ( std::size_t n = std::max<std::size_t>( min_nodes, 1 ); n <= node_budget; ++n )
  {
    res.stats.max_nodes = n;
    detail::search_kernel K{ &spec, n, {}, {}, 0, 0, degree_bound };
    std::size_t const first_clique = n - spec.clique;
    for ( std::size_t v = first_clique; v < n; ++v )
    {
      K.base |= 1u << v;
      K.clique_mask |= 1u << v;
    }
    for ( node u = 0; u < n; ++u )
      for ( node v = u + 1; v < n; ++v )
      {
        if ( u >= first_clique )
          K.fixed.push_back( { u, v } );
        else if ( spec.terminal_edges || v >= l + spec.outputs )
          K.pairs.push_back( { u, v } );
      }

    std::uint64_t theta_space = 1;
    if ( !spec.rule )
      for ( std::size_t v = 0; v < n; ++v )
        theta_space *= spec.max_threshold;
    double const bits = static_cast<double>( K.pairs.size() ) + std::log2( static_cast<double>( theta_space ) );
    bool const exhaustive = n <= search_exhaustive_nodes && bits <= 26.0;
    if ( !exhaustive )
      res.stats.exhaustive = false;

    unsigned const chunks = 64;
    std::vector<std::optional<detail::candidate>> best( chunks );
    std::vector<std::size_t> examined( chunks, 0 ), passed( chunks, 0 );
    std::uint64_t const edge_space = std::uint64_t{ 1 } << K.pairs.size();
    std::uint64_t const total = exhaustive ? edge_space * theta_space : samples;
    parallel_for( chunks, [&]( std::size_t c ) {
      std::uint64_t const lo = total * c / chunks, hi = total * ( c + 1 ) / chunks;
      for ( std::uint64_t i = lo; i < hi; ++i )
      {
        std::uint64_t emask, tcode;
        if ( exhaustive )
        {
          emask = i % edge_space;
          tcode = i / edge_space;
        }
        else
        {
          rng_engine rng( derive_seed( seed, n, i ) );
          emask = 0;
          for ( std::size_t k = 0; k < K.pairs.size(); ++k )
            if ( coin( rng ) )
              emask |= std::uint64_t{ 1 } << k;
          tcode = uniform_below( rng, theta_space );
        }
        auto theta = detail::decode_theta( tcode, n, spec.max_threshold );
        ++examined[c];
        if ( !K.check( emask, theta ) )
          continue;
        ++passed[c];
        auto cand = K.make( emask, theta );
        if ( !best[c] || cand < *best[c] )
          best[c] = std::move( cand );
      }
    } );
    std::optional<detail::candidate> winner;
    for ( std::size_t c = 0; c < chunks; ++c )
    {
      res.stats.examined += examined[c];
      res.stats.passed += passed[c];
      if ( best[c] && ( !winner || *best[c] < *winner ) )
        winner = best[c];
    }
    if ( !winner )
      continue;

    gadget g;
    g.kind = "searched";
    g.origin = provenance::searched;
    graph topo( n, winner->edges );
    if ( spec.rule )
      g.net = automata_network( topo, *spec.rule );
    else
    {
      std::vector<rule_spec> rules;
      for ( auto t : winner->theta )
        rules.push_back( rule_spec::threshold( t ) );
      g.net = automata_network( topo, rules );
    }
    auto& ct = g.contract;
    ct.target = spec.target;
    ct.t_star = spec.t_star;
    for ( node v = 0; v < l; ++v )
      ct.inputs.push_back( v );
    for ( std::size_t o = 0; o < spec.outputs; ++o )
      ct.outputs.push_back( static_cast<node>( l + o ) );
    for ( std::size_t v = first_clique; v < n; ++v )
      ct.frozen.push_back( static_cast<node>( v ) );
    ct.base = configuration::from_word( K.base, n );
    res.found = std::move( g );
    return res;
  }
  return res;
}

} // namespace totnet
