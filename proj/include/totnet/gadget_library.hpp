#pragma once

#include "configuration.hpp"
#include "error.hpp"
#include "gadget.hpp"
#include "gate.hpp"
#include "graph.hpp"
#include "network.hpp"
#include "rule.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace totnet
{

/* incremental graph + base state + optional per-node rules */
class network_builder
{
public:
  node add( bool active = false )
  {
    auto v = g_.add_node();
    base_.push_back( active );
    theta_.push_back( 0 );
    return v;
  }

  std::vector<node> add_many( std::size_t k, bool active = false )
  {
    std::vector<node> vs;
    for ( std::size_t i = 0; i < k; ++i )
      vs.push_back( add( active ) );
    return vs;
  }

  std::vector<node> clique( std::size_t k, bool active = true )
  {
    auto vs = add_many( k, active );
    for ( std::size_t a = 0; a < k; ++a )
      for ( std::size_t b = a + 1; b < k; ++b )
        g_.add_edge( vs[a], vs[b] );
    return vs;
  }

  void edge( node u, node v ) { g_.add_edge( u, v ); }
  void set_base( node v, bool active ) { base_[v] = active; }
  /* per-node threshold; 0 means the uniform rule */
  void set_threshold( node v, unsigned theta ) { theta_[v] = theta; }

  std::size_t size() const { return g_.size(); }
  graph const& topology() const { return g_; }
  bool active( node v ) const { return base_[v]; }

  /* inert padding: every node reaches degree >= min_deg using all-0 cliques K_{min_deg+1};
     each filler touches at most one outside node, so its sum never exceeds 1 */
  void pad_min_degree( std::size_t min_deg )
  {
    std::vector<node> free_slots;
    auto const original = g_.size();
    for ( node v = 0; v < original; ++v )
      while ( g_.degree( v ) < min_deg )
      {
        if ( free_slots.empty() )
        {
          auto block = clique( min_deg + 1, false );
          free_slots.assign( block.rbegin(), block.rend() );
        }
        g_.add_edge( v, free_slots.back() );
        free_slots.pop_back();
      }
  }

  configuration base() const
  {
    configuration c( g_.size() );
    for ( std::size_t i = 0; i < base_.size(); ++i )
      c.set( i, base_[i] );
    return c;
  }

  automata_network network( rule_spec const& uniform ) const
  {
    bool per_node = std::any_of( theta_.begin(), theta_.end(), []( unsigned t ) { return t != 0; } );
    if ( !per_node )
      return automata_network( g_, uniform );
    std::vector<rule_spec> rules;
    for ( auto t : theta_ )
      rules.push_back( t ? rule_spec::threshold( t ) : uniform );
    return automata_network( g_, rules );
  }

private:
  graph g_;
  std::vector<bool> base_;
  std::vector<unsigned> theta_;
};

/* isolated (beta = alpha) or interval [alpha, beta] NAND construction */
struct nand_family
{
  bool interval = false;
  unsigned alpha = 3;
  unsigned beta = 3;

  static nand_family isolated( unsigned a ) { return { false, a, a }; }
  static nand_family make_interval( unsigned a, unsigned b ) { return { true, a, b }; }

  rule_spec rule() const { return interval ? rule_spec::interval( alpha, beta ) : rule_spec::isolated( alpha ); }
  /* active clique size whose members sit at the top of the activation window */
  std::size_t top_clique() const { return beta + 1; }
  /* clock terminals per clocked cell: hold sum alpha + K must leave the window */
  std::size_t clock_terminals() const { return beta - alpha + 1; }

  void validate() const
  {
    if ( interval ? ( alpha < 2 || alpha > beta ) : alpha < 3 )
      fail( error_kind::bad_params, interval ? "interval gadgets need 2 <= alpha <= beta" : "isolated gadgets need alpha >= 3" );
  }
};

/* spark -> path -> terminal q; q drops exactly at step d. returns q */
inline node build_clock( network_builder& b, nand_family const& fam, std::size_t d, std::vector<node>* terminal_mates = nullptr )
{
  if ( d < 1 )
    fail( error_kind::bad_params, "clock delay must be at least 1" );
  auto const a = fam.alpha;
  auto term = b.clique( fam.top_clique(), true );
  node const q = term[0];
  if ( terminal_mates )
    terminal_mates->assign( term.begin() + 1, term.end() );
  node prev = b.add( true ); /* spark */
  for ( std::size_t i = 1; i < d; ++i )
  {
    node p = b.add( false );
    b.edge( prev, p );
    /* a-1 active neighbors at rest; the last one counts q among them */
    std::size_t const support = ( i + 1 == d ) ? a - 2 : a - 1;
    if ( support > 0 )
    {
      auto sup = b.clique( a + 1, true );
      for ( std::size_t k = 0; k < support; ++k )
        b.edge( p, sup[k] );
    }
    prev = p;
  }
  b.edge( prev, q );
  return q;
}

struct nand_cell
{
  node center;
  std::vector<node> outputs; /* o, o' */
  std::vector<node> upper;   /* isolated: unused upper clique members */
};

/* central node fires iff all (distinct) inputs are 1 and, with terminals, only after they drop;
   outputs fall three steps after the evaluation */
inline nand_cell build_nand_cell( network_builder& b, nand_family const& fam, std::vector<node> const& inputs,
                                  std::vector<node> const& terminals, bool keep_upper = false )
{
  auto const a = fam.alpha;
  auto const k = inputs.size();
  if ( k < 1 || k > 2 )
    fail( error_kind::bad_params, "NAND cell takes one or two distinct inputs" );
  nand_cell cell;
  cell.center = b.add( false );
  node const c = cell.center;
  for ( auto x : inputs )
    b.edge( c, x );
  for ( auto q : terminals )
    b.edge( c, q );

  if ( !fam.interval )
  {
    /* rest sum: (a-1-k) upper + r + inputs */
    std::size_t const upper = a - 1 - k;
    if ( upper > 0 || keep_upper )
    {
      auto u = b.clique( a + 1, true );
      for ( std::size_t i = 0; i < upper; ++i )
        b.edge( c, u[i] );
      cell.upper.assign( u.begin() + static_cast<std::ptrdiff_t>( upper ), u.end() );
    }
    auto right = b.clique( a + 1, true );
    b.edge( c, right[0] );
    cell.outputs = { right[1], right[2] };
    return cell;
  }

  /* interval: (a-k) supporters; relays at a-1 fire with the center and push outputs past beta */
  std::size_t const support = a - k;
  if ( support > 0 )
  {
    auto sup = b.clique( a + 1, true );
    for ( std::size_t i = 0; i < support; ++i )
      b.edge( c, sup[i] );
  }
  auto out = b.clique( fam.top_clique(), true );
  for ( std::size_t j = 0; j < 2; ++j )
  {
    node r = b.add( false );
    b.edge( c, r );
    b.edge( r, out[j] );
    if ( a > 2 )
    {
      auto sup = b.clique( a + 1, true );
      for ( std::size_t i = 0; i + 2 < a; ++i )
        b.edge( r, sup[i] );
    }
  }
  cell.outputs = { out[0], out[1] };
  cell.upper.assign( out.begin() + 2, out.end() );
  return cell;
}

struct gadget_params
{
  unsigned alpha = 3;
  unsigned beta = 3;
  std::size_t d = 1;
};

namespace detail
{
inline gadget finish( std::string kind, network_builder& b, rule_spec const& rule, gadget_contract c )
{
  gadget g;
  g.kind = std::move( kind );
  g.net = b.network( rule );
  c.base = b.base();
  g.contract = std::move( c );
  check_contract_shape( g.contract, g.net.size() );
  return g;
}

inline gadget star_gate( std::string kind, bool is_and, bool majority )
{
  network_builder b;
  node x = b.add(), y = b.add(), m = b.add(), o = b.add(), o2 = b.add();
  b.edge( x, m );
  b.edge( y, m );
  b.edge( m, o );
  b.edge( m, o2 );
  gadget_contract c;
  c.target = gate_from_id( is_and ? gates::AND : gates::OR );
  c.t_star = 2;
  c.inputs = { x, y };
  c.outputs = { o, o2 };
  if ( majority )
  {
    if ( !is_and )
    {
      /* degree-2 relays copy one input each; every output sees one relay per input */
      network_builder r;
      node rx = r.add(), ry = r.add(), ro = r.add(), ro2 = r.add();
      auto rel = r.add_many( 4 );
      r.edge( rx, rel[0] );
      r.edge( ry, rel[1] );
      r.edge( rx, rel[2] );
      r.edge( ry, rel[3] );
      r.edge( rel[0], ro );
      r.edge( rel[1], ro );
      r.edge( rel[2], ro2 );
      r.edge( rel[3], ro2 );
      c.inputs = { rx, ry };
      c.outputs = { ro, ro2 };
      return finish( std::move( kind ), r, rule_spec::majority(), c );
    }
    return finish( std::move( kind ), b, rule_spec::majority(), c );
  }
  for ( node v : { x, y, o, o2 } )
    b.set_threshold( v, 1 );
  b.set_threshold( m, is_and ? 2 : 1 );
  return finish( std::move( kind ), b, rule_spec::threshold( 1 ), c );
}

inline gadget nand_gadget( std::string kind, nand_family fam, std::optional<std::size_t> d )
{
  fam.validate();
  network_builder b;
  gadget_contract c;
  c.target = gate_from_id( gates::NAND );
  std::vector<node> terminals;
  node x, y;
  if ( d )
  {
    /* inputs sit in active cliques, like outputs of a previous layer */
    x = b.clique( fam.top_clique(), true )[0];
    y = b.clique( fam.top_clique(), true )[0];
    for ( std::size_t k = 0; k < fam.clock_terminals(); ++k )
      terminals.push_back( build_clock( b, fam, *d ) );
    c.clock_d = d;
    c.t_star = *d + 3;
  }
  else
  {
    x = b.add();
    y = b.add();
    c.t_star = 3;
  }
  auto cell = build_nand_cell( b, fam, { x, y }, terminals, !fam.interval && !d );
  c.inputs = { x, y };
  c.outputs = cell.outputs;
  /* only nodes out of reach of the knock-out within t* stay frozen */
  if ( !d && ( fam.interval || fam.alpha == 3 ) )
    c.frozen = cell.upper;
  if ( fam.interval )
    b.pad_min_degree( fam.beta + 1 );
  return finish( std::move( kind ), b, fam.rule(), c );
}

inline gadget clock_gadget( std::string kind, nand_family fam, std::size_t d )
{
  fam.validate();
  network_builder b;
  gadget_contract c;
  std::vector<node> mates;
  node q = build_clock( b, fam, d, &mates );
  c.target = gates::CONST0_ARITY0;
  c.t_star = d;
  c.clock_d = d;
  c.outputs = { q };
  c.frozen = mates;
  if ( fam.interval )
    b.pad_min_degree( fam.beta + 1 );
  return finish( std::move( kind ), b, fam.rule(), c );
}

inline rule_spec rule_one() { return rule_spec::explicit_set( { 1 } ); }

inline gadget rule1_xor_or_nor( std::string kind, bool nor, std::size_t delay )
{
  network_builder b;
  node x = b.add(), y = b.add(), c0 = b.add(), o = b.add(), o2 = b.add();
  for ( node v : { x, y, o, o2 } )
    b.edge( v, c0 );
  gadget_contract c;
  c.inputs = { x, y };
  c.outputs = { o, o2 };
  if ( !nor )
  {
    c.target = gate_from_id( gates::XOR );
    c.t_star = 2;
    return finish( std::move( kind ), b, rule_one(), c );
  }
  c.target = gate_from_id( gates::NOR );
  /* blocker next to the center: prepared at 1, or reached by a wire at step delay */
  node blocker = b.add( delay == 0 );
  b.edge( blocker, c0 );
  if ( delay > 0 )
  {
    node prev = b.add( true );
    for ( std::size_t i = 1; i < delay; ++i )
    {
      node w = b.add();
      b.edge( prev, w );
      prev = w;
    }
    b.edge( prev, blocker );
    c.clock_d = delay;
  }
  c.t_star = delay + 2;
  return finish( std::move( kind ), b, rule_one(), c );
}

inline gadget rule1_wire( std::size_t d )
{
  if ( d < 1 )
    fail( error_kind::bad_params, "wire length must be at least 1" );
  network_builder b;
  auto path = b.add_many( d + 1 );
  for ( std::size_t i = 0; i < d; ++i )
    b.edge( path[i], path[i + 1] );
  gadget_contract c;
  c.target = gates::IDENTITY;
  c.t_star = d;
  c.inputs = { path.front() };
  c.outputs = { path.back() };
  return finish( "rule1_wire", b, rule_one(), c );
}

inline gadget rule2_nand()
{
  network_builder b;
  node x = b.add(), y = b.add(), a = b.add(), g = b.add();
  auto support = b.clique( 3, true );
  node h1 = b.add(), h2 = b.add();
  auto out = b.clique( 3, true );
  b.edge( x, a );
  b.edge( y, a );
  b.edge( a, g );
  b.edge( g, support[0] );
  b.edge( g, h1 );
  b.edge( g, h2 );
  b.edge( h1, out[0] );
  b.edge( h2, out[1] );
  gadget_contract c;
  c.target = gate_from_id( gates::NAND );
  c.t_star = 4;
  c.inputs = { x, y };
  c.outputs = { out[0], out[1] };
  return finish( "rule2_nand", b, rule_spec::explicit_set( { 2 } ), c );
}

inline gadget interval_not( nand_family fam )
{
  fam.validate();
  network_builder b;
  node x = b.add();
  auto out = b.clique( fam.top_clique(), true );
  b.edge( x, out[0] );
  gadget_contract c;
  c.target = gates::NOT;
  c.t_star = 1;
  c.inputs = { x };
  c.outputs = { out[0] };
  c.frozen.assign( out.begin() + 1, out.end() );
  b.pad_min_degree( fam.beta + 1 );
  return finish( "interval_not", b, fam.rule(), c );
}
} // namespace detail

inline std::vector<std::string> gadget_kinds()
{
  return { "threshold_and", "threshold_or",    "majority_and",  "majority_or",   "isolated_nand",         "clock",
           "clocked_nand",  "interval_clock",  "interval_clocked_nand",          "rule1_xor",     "rule1_nor",
           "rule1_wire",    "rule1_delayed_nor", "rule2_nand",  "interval_not",  "interval_nand" };
}

inline gadget build_gadget( std::string const& kind, gadget_params const& p = {} )
{
  using namespace detail;
  if ( kind == "threshold_and" ) return star_gate( kind, true, false );
  if ( kind == "threshold_or" ) return star_gate( kind, false, false );
  if ( kind == "majority_and" ) return star_gate( kind, true, true );
  if ( kind == "majority_or" ) return star_gate( kind, false, true );
  if ( kind == "isolated_nand" ) return nand_gadget( kind, nand_family::isolated( p.alpha ), std::nullopt );
  if ( kind == "clocked_nand" ) return nand_gadget( kind, nand_family::isolated( p.alpha ), p.d );
  if ( kind == "clock" ) return clock_gadget( kind, nand_family::isolated( p.alpha ), p.d );
  if ( kind == "interval_nand" ) return nand_gadget( kind, nand_family::make_interval( p.alpha, p.beta ), std::nullopt );
  if ( kind == "interval_clocked_nand" ) return nand_gadget( kind, nand_family::make_interval( p.alpha, p.beta ), p.d );
  if ( kind == "interval_clock" ) return clock_gadget( kind, nand_family::make_interval( p.alpha, p.beta ), p.d );
  if ( kind == "interval_not" ) return interval_not( nand_family::make_interval( p.alpha, p.beta ) );
  if ( kind == "rule1_xor" ) return rule1_xor_or_nor( kind, false, 0 );
  if ( kind == "rule1_nor" ) return rule1_xor_or_nor( kind, true, 0 );
  if ( kind == "rule1_delayed_nor" )
  {
    if ( p.d < 1 )
      fail( error_kind::bad_params, "delay must be at least 1" );
    return rule1_xor_or_nor( kind, true, p.d );
  }
  if ( kind == "rule1_wire" ) return rule1_wire( p.d );
  if ( kind == "rule2_nand" ) return rule2_nand();
  fail( error_kind::unknown_kind, "no gadget named '" + kind + "'" );
}

/* the shipped suite: file stem -> (kind, params) */
struct suite_entry
{
  std::string name;
  std::string kind;
  gadget_params params;
};

inline std::vector<suite_entry> shipped_suite()
{
  std::vector<suite_entry> s;
  for ( auto k : { "threshold_and", "threshold_or", "majority_and", "majority_or", "rule1_xor", "rule1_nor", "rule2_nand" } )
    s.push_back( { k, k, {} } );
  for ( unsigned a : { 3u, 4u, 5u } )
    s.push_back( { "isolated_nand_a" + std::to_string( a ), "isolated_nand", { a, a, 1 } } );
  for ( std::size_t d = 1; d <= 6; ++d )
  {
    auto const ds = "_d" + std::to_string( d );
    s.push_back( { "clock_a3" + ds, "clock", { 3, 3, d } } );
    s.push_back( { "clocked_nand_a3" + ds, "clocked_nand", { 3, 3, d } } );
    s.push_back( { "interval_clock_2_3" + ds, "interval_clock", { 2, 3, d } } );
    s.push_back( { "interval_clocked_nand_2_3" + ds, "interval_clocked_nand", { 2, 3, d } } );
  }
  for ( std::size_t d = 1; d <= 4; ++d )
  {
    s.push_back( { "rule1_wire_d" + std::to_string( d ), "rule1_wire", { 3, 3, d } } );
    s.push_back( { "rule1_delayed_nor_d" + std::to_string( d ), "rule1_delayed_nor", { 3, 3, d } } );
  }
  for ( auto [a, bt] : { std::pair{ 2u, 2u }, std::pair{ 2u, 3u }, std::pair{ 3u, 4u } } )
  {
    auto const tag = "_" + std::to_string( a ) + "_" + std::to_string( bt );
    s.push_back( { "interval_not" + tag, "interval_not", { a, bt, 1 } } );
    s.push_back( { "interval_nand" + tag, "interval_nand", { a, bt, 1 } } );
  }
  return s;
}

/* rule-1 graph whose spectrum holds AND and OR from t = 3 but loses OR at t = 4 */
inline graph rule1_and_or_graph()
{
  return graph( 6, { { 0, 1 }, { 0, 2 }, { 0, 3 }, { 0, 4 }, { 1, 2 }, { 1, 3 }, { 2, 4 } } );
}

} // namespace totnet
