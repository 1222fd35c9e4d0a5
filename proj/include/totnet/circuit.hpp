#pragma once

#include "error.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace totnet
{

enum class gate_kind
{
  input,
  output,
  and_,
  or_,
  nand
};

inline std::string_view to_string( gate_kind k )
{
  switch ( k )
  {
  case gate_kind::input: return "INPUT";
  case gate_kind::output: return "OUTPUT";
  case gate_kind::and_: return "AND";
  case gate_kind::or_: return "OR";
  case gate_kind::nand: return "NAND";
  }
  return "?";
}

struct circuit_gate
{
  std::string name;
  gate_kind kind = gate_kind::input;
  std::vector<std::size_t> fanin;
  std::size_t layer = 0;

  bool is_logic() const { return kind == gate_kind::and_ || kind == gate_kind::or_ || kind == gate_kind::nand; }
};

/* DAG of INPUT / AND / OR / NAND / OUTPUT gates; layer = longest path from an input */
class circuit
{
public:
  std::vector<circuit_gate> gates;
  std::vector<std::size_t> inputs;  /* in declaration order */
  std::vector<std::size_t> outputs; /* OUTPUT gate indices, declaration order */

  std::size_t num_logic() const
  {
    return static_cast<std::size_t>( std::count_if( gates.begin(), gates.end(), []( auto const& g ) { return g.is_logic(); } ) );
  }

  std::size_t depth() const
  {
    std::size_t d = 0;
    for ( auto const& g : gates )
      if ( g.is_logic() )
        d = std::max( d, g.layer );
    return d;
  }

  bool has_kind( gate_kind k ) const
  {
    return std::any_of( gates.begin(), gates.end(), [k]( auto const& g ) { return g.kind == k; } );
  }

  /* distinct successor gates, each output marker counted once */
  std::vector<std::vector<std::size_t>> successors() const
  {
    std::vector<std::vector<std::size_t>> succ( gates.size() );
    for ( std::size_t v = 0; v < gates.size(); ++v )
    {
      std::set<std::size_t> seen;
      for ( auto u : gates[v].fanin )
        if ( seen.insert( u ).second )
          succ[u].push_back( v );
    }
    return succ;
  }

  /* topological layers; throws on cycles */
  void compute_layers()
  {
    auto succ = successors();
    std::vector<std::size_t> indeg( gates.size(), 0 );
    for ( std::size_t v = 0; v < gates.size(); ++v )
    {
      std::set<std::size_t> seen( gates[v].fanin.begin(), gates[v].fanin.end() );
      indeg[v] = seen.size();
    }
    std::vector<std::size_t> ready;
    for ( std::size_t v = 0; v < gates.size(); ++v )
    {
      gates[v].layer = 0;
      if ( indeg[v] == 0 )
        ready.push_back( v );
    }
    std::size_t done = 0;
    order_.clear();
    while ( !ready.empty() )
    {
      auto u = ready.back();
      ready.pop_back();
      order_.push_back( u );
      ++done;
      for ( auto v : succ[u] )
      {
        gates[v].layer = std::max( gates[v].layer, gates[u].layer + 1 );
        if ( --indeg[v] == 0 )
          ready.push_back( v );
      }
    }
    if ( done != gates.size() )
      fail( error_kind::cycle, "circuit contains a cycle" );
  }

  std::vector<std::size_t> const& topological_order() const { return order_; }

  void check_fanout() const
  {
    auto succ = successors();
    for ( std::size_t v = 0; v < gates.size(); ++v )
      if ( gates[v].is_logic() && succ[v].size() > 2 )
        fail( error_kind::fanout_exceeded, "gate '" + gates[v].name + "' drives " + std::to_string( succ[v].size() ) + " successors" );
  }

  std::size_t find( std::string const& name ) const
  {
    for ( std::size_t i = 0; i < gates.size(); ++i )
      if ( gates[i].kind != gate_kind::output && gates[i].name == name )
        return i;
    return gates.size();
  }

private:
  std::vector<std::size_t> order_;
};

namespace detail
{
inline std::vector<std::string> tokens( std::string_view line )
{
  std::vector<std::string> out;
  std::string cur;
  for ( char ch : line )
  {
    if ( ch == ' ' || ch == '\t' || ch == '\r' )
    {
      if ( !cur.empty() )
        out.push_back( std::move( cur ) ), cur.clear();
    }
    else if ( ch == '=' )
    {
      if ( !cur.empty() )
        out.push_back( std::move( cur ) ), cur.clear();
      out.emplace_back( "=" );
    }
    else
      cur += ch;
  }
  if ( !cur.empty() )
    out.push_back( std::move( cur ) );
  return out;
}
} // namespace detail

/* lines "in A", "G = OP A B", "out G"; '#' comments; ';' also separates statements */
inline circuit parse_circuit( std::string_view text )
{
  struct stmt
  {
    std::vector<std::string> tok;
    std::size_t line;
  };
  std::vector<stmt> stmts;
  std::size_t line_no = 1;
  std::string cur;
  auto flush = [&] {
    auto hash = cur.find( '#' );
    if ( hash != std::string::npos )
      cur.resize( hash );
    auto tok = detail::tokens( cur );
    if ( !tok.empty() )
      stmts.push_back( { std::move( tok ), line_no } );
    cur.clear();
  };
  for ( char ch : text )
  {
    if ( ch == '\n' )
    {
      flush();
      ++line_no;
    }
    else if ( ch == ';' )
      flush();
    else
      cur += ch;
  }
  flush();

  auto where = []( std::size_t l ) { return " (line " + std::to_string( l ) + ")"; };
  circuit c;
  std::map<std::string, std::size_t> names;
  /* pass 1: declarations */
  for ( auto const& s : stmts )
  {
    auto const& t = s.tok;
    std::string name;
    circuit_gate g;
    if ( t[0] == "in" && t.size() == 2 )
    {
      name = t[1];
      g.kind = gate_kind::input;
    }
    else if ( t[0] == "out" && t.size() == 2 )
      continue;
    else if ( t.size() >= 3 && t[1] == "=" )
    {
      name = t[0];
      auto const& op = t[2];
      if ( op == "AND" )
        g.kind = gate_kind::and_;
      else if ( op == "OR" )
        g.kind = gate_kind::or_;
      else if ( op == "NAND" )
        g.kind = gate_kind::nand;
      else
        fail( error_kind::unknown_gate, "unknown operator '" + op + "'" + where( s.line ) );
      if ( t.size() != 5 )
        fail( error_kind::parse_error, "gate '" + name + "' needs exactly two operands" + where( s.line ) );
    }
    else
      fail( error_kind::parse_error, "cannot parse statement" + where( s.line ) );
    if ( names.count( name ) )
      fail( error_kind::parse_error, "signal '" + name + "' defined twice" + where( s.line ) );
    g.name = name;
    names[name] = c.gates.size();
    if ( g.kind == gate_kind::input )
      c.inputs.push_back( c.gates.size() );
    c.gates.push_back( std::move( g ) );
  }
  /* pass 2: wiring */
  auto resolve = [&]( std::string const& n, std::size_t l ) {
    auto it = names.find( n );
    if ( it == names.end() )
      fail( error_kind::dangling_wire, "signal '" + n + "' is never defined" + where( l ) );
    return it->second;
  };
  for ( auto const& s : stmts )
  {
    auto const& t = s.tok;
    if ( t[0] == "out" && t.size() == 2 )
    {
      circuit_gate g;
      g.kind = gate_kind::output;
      g.name = t[1];
      g.fanin = { resolve( t[1], s.line ) };
      c.outputs.push_back( c.gates.size() );
      c.gates.push_back( std::move( g ) );
    }
    else if ( t.size() == 5 && t[1] == "=" )
      c.gates[names[t[0]]].fanin = { resolve( t[3], s.line ), resolve( t[4], s.line ) };
  }
  c.compute_layers();
  c.check_fanout();
  return c;
}

inline std::string to_netlist( circuit const& c )
{
  std::ostringstream os;
  for ( auto i : c.inputs )
    os << "in " << c.gates[i].name << '\n';
  for ( auto const& g : c.gates )
    if ( g.is_logic() )
      os << g.name << " = " << to_string( g.kind ) << ' ' << c.gates[g.fanin[0]].name << ' ' << c.gates[g.fanin[1]].name << '\n';
  for ( auto o : c.outputs )
    os << "out " << c.gates[o].name << '\n';
  return os.str();
}

/* reference evaluation in topological order */
inline std::vector<bool> evaluate_circuit( circuit const& c, std::vector<bool> const& in )
{
  if ( in.size() != c.inputs.size() )
    fail( error_kind::arity_mismatch, "circuit has " + std::to_string( c.inputs.size() ) + " inputs, got " + std::to_string( in.size() ) );
  std::vector<bool> val( c.gates.size(), false );
  for ( std::size_t k = 0; k < c.inputs.size(); ++k )
    val[c.inputs[k]] = in[k];
  for ( auto v : c.topological_order() )
  {
    auto const& g = c.gates[v];
    switch ( g.kind )
    {
    case gate_kind::input: break;
    case gate_kind::output: val[v] = val[g.fanin[0]]; break;
    case gate_kind::and_: val[v] = val[g.fanin[0]] && val[g.fanin[1]]; break;
    case gate_kind::or_: val[v] = val[g.fanin[0]] || val[g.fanin[1]]; break;
    case gate_kind::nand: val[v] = !( val[g.fanin[0]] && val[g.fanin[1]] ); break;
    }
  }
  std::vector<bool> out;
  for ( auto o : c.outputs )
    out.push_back( val[o] );
  return out;
}

enum class layer_mode
{
  monotone,
  nand
};

/* every logic edge spans one layer and every output driver sits at the top layer */
inline bool is_layered( circuit const& c )
{
  auto const d = c.depth();
  for ( auto const& g : c.gates )
  {
    if ( g.is_logic() )
    {
      for ( auto u : g.fanin )
        if ( c.gates[u].layer + 1 != g.layer )
          return false;
    }
    else if ( g.kind == gate_kind::output && c.gates[g.fanin[0]].layer != d )
      return false;
  }
  return true;
}

/* pads long edges with buffer chains: OR(x,x) in monotone mode,
   NAND pairs in nand mode (gaps must then be odd and output gaps even) */
inline circuit layerize( circuit const& c, layer_mode mode )
{
  for ( auto const& g : c.gates )
    if ( ( mode == layer_mode::monotone && g.kind == gate_kind::nand ) ||
         ( mode == layer_mode::nand && ( g.kind == gate_kind::and_ || g.kind == gate_kind::or_ ) ) )
      fail( error_kind::mode_mismatch, "gate '" + g.name + "' does not belong to the requested mode" );

  auto const D = c.depth();
  circuit out;
  out.gates = c.gates;
  out.inputs = c.inputs;
  out.outputs = c.outputs;
  std::set<std::string> taken;
  for ( auto const& g : c.gates )
    taken.insert( g.name );
  /* logic sources share one chain (fanout <= 2 keeps buffers legal); inputs get one per consumer */
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> chains;
  auto const op = mode == layer_mode::monotone ? gate_kind::or_ : gate_kind::nand;
  auto tap = [&]( std::size_t s, std::size_t consumer, std::size_t gap ) {
    auto key = std::make_pair( s, c.gates[s].kind == gate_kind::input ? consumer : c.gates.size() );
    auto& ch = chains[key];
    if ( ch.empty() )
      ch.push_back( s );
    while ( ch.size() <= gap )
    {
      std::string name = c.gates[s].name + "_b" + std::to_string( ch.size() );
      while ( taken.count( name ) )
        name += "_";
      taken.insert( name );
      auto prev = ch.back();
      ch.push_back( out.gates.size() );
      out.gates.push_back( circuit_gate{ name, op, { prev, prev }, 0 } );
    }
    return ch[gap];
  };
  for ( std::size_t v = 0; v < c.gates.size(); ++v )
  {
    auto const& g = c.gates[v];
    if ( g.kind == gate_kind::input )
      continue;
    auto const top = g.kind == gate_kind::output ? D : g.layer - 1;
    for ( std::size_t k = 0; k < g.fanin.size(); ++k )
    {
      auto const u = g.fanin[k];
      auto const gap = top - c.gates[u].layer;
      if ( mode == layer_mode::nand && gap % 2 == 1 )
        fail( error_kind::layer_parity, "signal '" + c.gates[u].name + "' reaches '" + g.name + "' across " +
                                            std::to_string( gap + ( g.kind == gate_kind::output ? 0 : 1 ) ) +
                                            " layers; NAND padding only preserves values across an even number of buffers" );
      auto const w = tap( u, v, gap );
      out.gates[v].fanin[k] = w;
    }
  }
  out.compute_layers();
  out.check_fanout();
  return out;
}

/* AND/OR/NAND -> NAND only; AND = NOT(NAND), OR = NAND(NOT a, NOT b) */
inline circuit to_nand( circuit const& c )
{
  std::ostringstream os;
  for ( auto i : c.inputs )
    os << "in " << c.gates[i].name << '\n';
  std::set<std::string> taken;
  for ( auto const& g : c.gates )
    taken.insert( g.name );
  auto fresh = [&]( std::string base ) {
    while ( taken.count( base ) )
      base += "_";
    taken.insert( base );
    return base;
  };
  for ( auto const& g : c.gates )
  {
    if ( !g.is_logic() )
      continue;
    auto const& a = c.gates[g.fanin[0]].name;
    auto const& b = c.gates[g.fanin[1]].name;
    if ( g.kind == gate_kind::nand )
      os << g.name << " = NAND " << a << ' ' << b << '\n';
    else if ( g.kind == gate_kind::and_ )
    {
      auto t = fresh( g.name + "_n" );
      os << t << " = NAND " << a << ' ' << b << '\n' << g.name << " = NAND " << t << ' ' << t << '\n';
    }
    else if ( a == b )
    {
      auto na = fresh( g.name + "_na" );
      os << na << " = NAND " << a << ' ' << a << '\n' << g.name << " = NAND " << na << ' ' << na << '\n';
    }
    else
    {
      auto na = fresh( g.name + "_na" ), nb = fresh( g.name + "_nb" );
      os << na << " = NAND " << a << ' ' << a << '\n'
         << nb << " = NAND " << b << ' ' << b << '\n'
         << g.name << " = NAND " << na << ' ' << nb << '\n';
    }
  }
  for ( auto o : c.outputs )
    os << "out " << c.gates[o].name << '\n';
  return parse_circuit( os.str() );
}

/* seeded random circuit: sinks become outputs; nand mode keeps every gap odd so layerize succeeds */
inline circuit random_circuit( std::size_t num_inputs, std::size_t num_gates, std::size_t max_depth, layer_mode mode, std::uint64_t seed )
{
  if ( num_inputs < 1 || max_depth < 1 )
    fail( error_kind::bad_params, "random circuit needs at least one input and depth 1" );
  rng_engine rng( seed );
  struct sig
  {
    std::string name;
    std::size_t layer;
    std::size_t used;
    bool input;
  };
  std::vector<sig> sigs;
  std::ostringstream os;
  for ( std::size_t i = 0; i < num_inputs; ++i )
  {
    sigs.push_back( { "x" + std::to_string( i ), 0, 0, true } );
    os << "in " << sigs.back().name << '\n';
  }
  auto free = [&]( sig const& s ) { return s.input || s.used < 2; };
  for ( std::size_t gi = 0; gi < num_gates; ++gi )
  {
    std::vector<std::size_t> first;
    for ( std::size_t k = 0; k < sigs.size(); ++k )
      if ( free( sigs[k] ) && sigs[k].layer < max_depth )
        first.push_back( k );
    if ( first.empty() )
      break;
    auto a = first[uniform_below( rng, first.size() )];
    auto const la = sigs[a].layer;
    std::vector<std::size_t> second;
    for ( std::size_t k = 0; k < sigs.size(); ++k )
      if ( k != a && free( sigs[k] ) && sigs[k].layer <= la && ( mode == layer_mode::monotone || ( la - sigs[k].layer ) % 2 == 0 ) )
        second.push_back( k );
    auto b = second.empty() || uniform_below( rng, 8 ) == 0 ? a : second[uniform_below( rng, second.size() )];
    std::string op = mode == layer_mode::nand ? "NAND" : ( coin( rng ) ? "AND" : "OR" );
    std::string name = "g" + std::to_string( gi );
    os << name << " = " << op << ' ' << sigs[a].name << ' ' << sigs[b].name << '\n';
    ++sigs[a].used;
    if ( b != a )
      ++sigs[b].used;
    sigs.push_back( { name, la + 1, 0, false } );
  }
  std::size_t top = 0;
  for ( auto const& s : sigs )
    top = std::max( top, s.layer );
  for ( auto const& s : sigs )
    if ( !s.input && s.used == 0 && ( mode == layer_mode::monotone || ( top - s.layer ) % 2 == 0 ) )
      os << "out " << s.name << '\n';
  return parse_circuit( os.str() );
}

} // namespace totnet
