#pragma once

#include "error.hpp"
#include "rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace totnet
{

using node = std::uint32_t;
using edge = std::pair<node, node>;

/* undirected simple graph on nodes 0..n-1 with sorted adjacency */
class graph
{
public:
  graph() = default;

  explicit graph( std::size_t n ) : adj_( n ) {}

  graph( std::size_t n, std::vector<edge> const& edges ) : adj_( n )
  {
    for ( auto const& [u, v] : edges )
      add_edge( u, v );
  }

  std::size_t size() const noexcept { return adj_.size(); }

  node add_node()
  {
    adj_.emplace_back();
    return static_cast<node>( adj_.size() - 1 );
  }

  node add_nodes( std::size_t k )
  {
    auto const first = static_cast<node>( adj_.size() );
    adj_.resize( adj_.size() + k );
    return first;
  }

  /* returns false for duplicates */
  bool add_edge( node u, node v )
  {
    if ( u >= size() || v >= size() )
      fail( error_kind::format_error, "edge endpoint out of range" );
    if ( u == v )
      fail( error_kind::format_error, "self-loop on node " + std::to_string( u ) );
    auto& au = adj_[u];
    auto it = std::lower_bound( au.begin(), au.end(), v );
    if ( it != au.end() && *it == v )
      return false;
    au.insert( it, v );
    auto& av = adj_[v];
    av.insert( std::lower_bound( av.begin(), av.end(), u ), u );
    ++num_edges_;
    return true;
  }

  bool has_edge( node u, node v ) const
  {
    auto const& au = adj_.at( u );
    return std::binary_search( au.begin(), au.end(), v );
  }

  std::vector<node> const& neighbors( node v ) const { return adj_[v]; }
  std::size_t degree( node v ) const { return adj_[v].size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }

  std::size_t max_degree() const
  {
    std::size_t d = 0;
    for ( auto const& a : adj_ )
      d = std::max( d, a.size() );
    return d;
  }

  /* sorted pairs (u < v) */
  std::vector<edge> edges() const
  {
    std::vector<edge> es;
    es.reserve( num_edges_ );
    for ( node u = 0; u < size(); ++u )
      for ( auto v : adj_[u] )
        if ( u < v )
          es.emplace_back( u, v );
    return es;
  }

  bool connected() const
  {
    if ( size() == 0 )
      return true;
    std::vector<bool> seen( size(), false );
    std::vector<node> stack{ 0 };
    seen[0] = true;
    std::size_t count = 1;
    while ( !stack.empty() )
    {
      auto u = stack.back();
      stack.pop_back();
      for ( auto v : adj_[u] )
        if ( !seen[v] )
        {
          seen[v] = true;
          ++count;
          stack.push_back( v );
        }
    }
    return count == size();
  }

  bool operator==( graph const& other ) const { return adj_ == other.adj_; }

private:
  std::vector<std::vector<node>> adj_;
  std::size_t num_edges_ = 0;
};

/* von Neumann lattice, row-major node ids */
inline graph grid_graph( std::size_t rows, std::size_t cols, bool torus )
{
  if ( rows < 2 || cols < 2 )
    fail( error_kind::bad_params, "grid needs at least 2 rows and 2 columns" );
  graph g( rows * cols );
  auto id = [cols]( std::size_t r, std::size_t c ) { return static_cast<node>( r * cols + c ); };
  for ( std::size_t r = 0; r < rows; ++r )
    for ( std::size_t c = 0; c < cols; ++c )
    {
      if ( c + 1 < cols )
        g.add_edge( id( r, c ), id( r, c + 1 ) );
      else if ( torus && id( r, 0 ) != id( r, c ) )
        g.add_edge( id( r, c ), id( r, 0 ) );
      if ( r + 1 < rows )
        g.add_edge( id( r, c ), id( r + 1, c ) );
      else if ( torus && id( 0, c ) != id( r, c ) )
        g.add_edge( id( r, c ), id( 0, c ) );
    }
  return g;
}

/* G(n,p); pairs visited in lexicographic order */
inline graph erdos_renyi( std::size_t n, double p, std::uint64_t seed )
{
  if ( n < 1 || !( p > 0.0 && p < 1.0 ) )
    fail( error_kind::bad_params, "erdos_renyi needs n >= 1 and 0 < p < 1" );
  rng_engine rng( seed );
  graph g( n );
  for ( node u = 0; u < n; ++u )
    for ( node v = u + 1; v < n; ++v )
      if ( uniform01( rng ) < p )
        g.add_edge( u, v );
  return g;
}

inline graph complete_graph( std::size_t n )
{
  graph g( n );
  for ( node u = 0; u < n; ++u )
    for ( node v = u + 1; v < n; ++v )
      g.add_edge( u, v );
  return g;
}

inline graph path_graph( std::size_t n )
{
  graph g( n );
  for ( node u = 0; u + 1 < n; ++u )
    g.add_edge( u, u + 1 );
  return g;
}

inline nlohmann::json to_json( graph const& g )
{
  nlohmann::json es = nlohmann::json::array();
  for ( auto const& [u, v] : g.edges() )
    es.push_back( { u, v } );
  return { { "n", g.size() }, { "edges", es } };
}

inline graph graph_from_json( nlohmann::json const& j )
{
  try
  {
    auto const n = j.at( "n" ).get<std::int64_t>();
    if ( n < 0 )
      fail( error_kind::format_error, "negative node count" );
    graph g( static_cast<std::size_t>( n ) );
    for ( auto const& e : j.at( "edges" ) )
    {
      if ( !e.is_array() || e.size() != 2 )
        fail( error_kind::format_error, "edge must be a pair" );
      auto const u = e[0].get<std::int64_t>();
      auto const v = e[1].get<std::int64_t>();
      if ( u < 0 || v < 0 || u >= n || v >= n )
        fail( error_kind::format_error, "edge endpoint out of range" );
      g.add_edge( static_cast<node>( u ), static_cast<node>( v ) );
    }
    return g;
  }
  catch ( nlohmann::json::exception const& e )
  {
    fail( error_kind::format_error, e.what() );
  }
}

} // namespace totnet
