#pragma once

#include "circuit.hpp"
#include "gadget_library.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace totnet
{

/* target rule family for compilation */
struct compile_family
{
  enum class kind_t
  {
    threshold,
    majority,
    isolated,
    interval
  } kind = kind_t::threshold;
  unsigned alpha = 3;
  unsigned beta = 3;

  bool monotone() const { return kind == kind_t::threshold || kind == kind_t::majority; }
  nand_family nand() const { return kind == kind_t::interval ? nand_family::make_interval( alpha, beta ) : nand_family::isolated( alpha ); }

  std::string to_string() const
  {
    switch ( kind )
    {
    case kind_t::threshold: return "threshold";
    case kind_t::majority: return "majority";
    case kind_t::isolated: return "isolated:" + std::to_string( alpha );
    case kind_t::interval: return "interval:" + std::to_string( alpha ) + ":" + std::to_string( beta );
    }
    return "?";
  }
};

/* "threshold" | "majority" | "isolated:A" | "interval:A:B" */
inline compile_family parse_family( std::string const& text )
{
  compile_family f;
  if ( text == "threshold" )
    f.kind = compile_family::kind_t::threshold;
  else if ( text == "majority" )
    f.kind = compile_family::kind_t::majority;
  else
  {
    auto r = parse_rule( text );
    if ( r.kind == rule_kind::isolated )
      f = { compile_family::kind_t::isolated, r.alpha, r.alpha };
    else if ( r.kind == rule_kind::interval )
      f = { compile_family::kind_t::interval, r.alpha, r.beta };
    else
      fail( error_kind::bad_rule, "unsupported compile family '" + text + "'" );
    f.nand().validate();
  }
  return f;
}

struct compiled_network
{
  automata_network net;
  configuration init;
  std::vector<std::string> input_names, output_names;
  std::vector<node> input_nodes, output_nodes;
  std::size_t read_time = 0;
  std::string family;
  std::string netlist;
  std::size_t circuit_gates = 0;
  std::size_t circuit_depth = 0;
  /* per logic gate in layer order: circuit index, layer and output slots */
  std::vector<std::size_t> gate_index;
  std::vector<std::size_t> gate_layer;
  std::vector<std::vector<node>> gate_outputs;
};

namespace detail
{
/* hands out o then o' for each consuming edge */
struct slot_pool
{
  std::vector<std::vector<node>> slots;
  std::vector<std::size_t> used;

  node take( std::size_t gate )
  {
    if ( used[gate] >= slots[gate].size() )
      fail( error_kind::fanout_exceeded, "gate has no free output slot" );
    return slots[gate][used[gate]++];
  }
};

inline std::vector<std::size_t> distinct_fanin( circuit_gate const& g )
{
  std::vector<std::size_t> f{ g.fanin[0] };
  if ( g.fanin[1] != g.fanin[0] )
    f.push_back( g.fanin[1] );
  return f;
}
} // namespace detail

/* gate-by-gate composition; the circuit must already be layered */
inline compiled_network compile_circuit( circuit const& c, compile_family const& fam )
{
  for ( auto const& g : c.gates )
    if ( g.is_logic() && ( g.kind == gate_kind::nand ) == fam.monotone() )
      fail( error_kind::mode_mismatch, "gate '" + g.name + "' (" + std::string( to_string( g.kind ) ) + ") cannot be compiled for family " + fam.to_string() );
  if ( !is_layered( c ) )
    fail( error_kind::not_layerized, "circuit is not layered; run layerize first" );
  c.check_fanout();

  network_builder b;
  compiled_network out;
  out.family = fam.to_string();
  out.netlist = to_netlist( c );
  out.circuit_gates = c.num_logic();
  out.circuit_depth = c.depth();

  std::vector<node> input_node( c.gates.size(), 0 );
  for ( auto i : c.inputs )
  {
    input_node[i] = b.add( false );
    out.input_names.push_back( c.gates[i].name );
    out.input_nodes.push_back( input_node[i] );
  }

  detail::slot_pool pool{ std::vector<std::vector<node>>( c.gates.size() ), std::vector<std::size_t>( c.gates.size(), 0 ) };
  auto source = [&]( std::size_t u ) { return c.gates[u].kind == gate_kind::input ? input_node[u] : pool.take( u ); };

  /* layer order so fanin slots exist */
  std::vector<std::size_t> order;
  for ( std::size_t v = 0; v < c.gates.size(); ++v )
    if ( c.gates[v].is_logic() )
      order.push_back( v );
  std::stable_sort( order.begin(), order.end(), [&]( auto a, auto b2 ) { return c.gates[a].layer < c.gates[b2].layer; } );

  if ( fam.monotone() )
  {
    bool const maj = fam.kind == compile_family::kind_t::majority;
    for ( auto v : order )
    {
      auto const& g = c.gates[v];
      auto fin = detail::distinct_fanin( g );
      /* AND(a,a) degenerates to a buffer */
      bool const is_and = g.kind == gate_kind::and_ && fin.size() == 2;
      node m = b.add(), o = b.add(), o2 = b.add();
      for ( auto u : fin )
        b.edge( m, source( u ) );
      b.edge( m, o );
      b.edge( m, o2 );
      if ( maj )
      {
        /* OR cell: helpers fill the middle node up to threshold 3 at degree 6 (5 for one input) */
        if ( !is_and )
        {
          node h1 = b.add( true ), h2 = b.add( true );
          b.edge( h1, h2 );
          b.edge( h1, m );
          b.edge( h2, m );
        }
      }
      else
      {
        b.set_threshold( m, is_and ? 2 : 1 );
        b.set_threshold( o, 1 );
        b.set_threshold( o2, 1 );
      }
      pool.slots[v] = { o, o2 };
      out.gate_outputs.push_back( { o, o2 } );
      out.gate_index.push_back( v );
      out.gate_layer.push_back( g.layer );
    }
    out.read_time = 2 * c.depth();
  }
  else
  {
    auto const nf = fam.nand();
    std::map<std::size_t, std::vector<node>> clocks;
    for ( auto v : order )
    {
      auto const& g = c.gates[v];
      std::vector<node> terminals;
      if ( g.layer >= 2 )
      {
        auto& t = clocks[g.layer];
        if ( t.empty() )
          for ( std::size_t k = 0; k < nf.clock_terminals(); ++k )
            t.push_back( build_clock( b, nf, 3 * ( g.layer - 1 ) ) );
        terminals = t;
      }
      std::vector<node> ins;
      for ( auto u : detail::distinct_fanin( g ) )
        ins.push_back( source( u ) );
      auto cell = build_nand_cell( b, nf, ins, terminals );
      pool.slots[v] = cell.outputs;
      out.gate_outputs.push_back( cell.outputs );
      out.gate_index.push_back( v );
      out.gate_layer.push_back( g.layer );
    }
    if ( nf.interval )
      b.pad_min_degree( nf.beta + 1 );
    out.read_time = 3 * c.depth();
  }

  for ( auto o : c.outputs )
  {
    out.output_names.push_back( c.gates[o].name );
    out.output_nodes.push_back( source( c.gates[o].fanin[0] ) );
  }

  rule_spec uniform = rule_spec::threshold( 1 );
  if ( fam.kind == compile_family::kind_t::majority )
    uniform = rule_spec::majority();
  else if ( !fam.monotone() )
    uniform = fam.nand().rule();
  out.net = b.network( uniform );
  out.init = b.base();
  return out;
}

inline configuration load_inputs( compiled_network const& cn, std::vector<bool> const& bits )
{
  if ( bits.size() != cn.input_nodes.size() )
    fail( error_kind::arity_mismatch, "compiled network has " + std::to_string( cn.input_nodes.size() ) + " inputs, got " + std::to_string( bits.size() ) );
  auto x = cn.init;
  for ( std::size_t k = 0; k < bits.size(); ++k )
    x.set( cn.input_nodes[k], bits[k] );
  return x;
}

inline std::vector<bool> run_compiled( compiled_network const& cn, std::vector<bool> const& bits )
{
  auto x = evolve( cn.net, load_inputs( cn, bits ), cn.read_time );
  std::vector<bool> out;
  for ( auto v : cn.output_nodes )
    out.push_back( x[v] );
  return out;
}

/* per-step values of every cell's first output slot */
struct layer_trace
{
  std::vector<std::size_t> gate_layer;
  std::vector<std::string> rows; /* rows[t][g] in {0,1} */
};

inline layer_trace trace_compiled( compiled_network const& cn, std::vector<bool> const& bits )
{
  layer_trace tr;
  tr.gate_layer = cn.gate_layer;
  auto x = load_inputs( cn, bits );
  for ( std::size_t t = 0; t <= cn.read_time; ++t )
  {
    std::string row;
    for ( auto const& o : cn.gate_outputs )
      row += x[o[0]] ? '1' : '0';
    tr.rows.push_back( row );
    if ( t < cn.read_time )
      x = cn.net.step( x );
  }
  return tr;
}

/* node budget per gate and per clock step, largest over the families */
inline std::size_t size_bound( compile_family const& fam, std::size_t inputs, std::size_t gates, std::size_t depth )
{
  if ( fam.monotone() )
    return inputs + 5 * gates; /* m, o, o' and two helpers */
  auto const a = fam.alpha, bt = fam.beta;
  std::size_t const per_gate = 2 + 3 * ( a + 1 ) + 2 * ( bt + 1 );
  std::size_t const per_clock_step = ( bt - a + 1 ) * ( a + 2 );
  std::size_t bound = inputs + per_gate * gates + per_clock_step * 3 * depth * depth;
  if ( fam.kind == compile_family::kind_t::interval )
    bound *= 2; /* filler blocks */
  return bound;
}

inline nlohmann::json to_json( compiled_network const& cn )
{
  nlohmann::json j;
  j["kind"] = "compiled";
  j["graph"] = to_json( cn.net.topology() );
  j["rule"] = rules_to_json( cn.net );
  j["base"] = cn.init.to_string();
  j["inputs"] = cn.input_nodes;
  j["outputs"] = cn.output_nodes;
  j["frozen"] = nlohmann::json::array();
  j["t_star"] = cn.read_time;
  j["clock_d"] = nullptr;
  nlohmann::json io;
  for ( std::size_t k = 0; k < cn.input_nodes.size(); ++k )
    io["inputs"].push_back( { { "name", cn.input_names[k] }, { "node", cn.input_nodes[k] } } );
  for ( std::size_t k = 0; k < cn.output_nodes.size(); ++k )
    io["outputs"].push_back( { { "name", cn.output_names[k] }, { "node", cn.output_nodes[k] } } );
  if ( !io.contains( "inputs" ) )
    io["inputs"] = nlohmann::json::array();
  if ( !io.contains( "outputs" ) )
    io["outputs"] = nlohmann::json::array();
  io["read_time"] = cn.read_time;
  io["family"] = cn.family;
  io["circuit"] = cn.netlist;
  j["io"] = io;
  return j;
}

inline compiled_network compiled_from_json( nlohmann::json const& j )
{
  try
  {
    compiled_network cn;
    cn.net = automata_network( graph_from_json( j.at( "graph" ) ), rules_from_json( j.at( "rule" ) ) );
    cn.init = configuration::from_string( j.at( "base" ).get<std::string>() );
    if ( cn.init.size() != cn.net.size() )
      fail( error_kind::length_mismatch, "base configuration length differs from network size" );
    auto const& io = j.at( "io" );
    for ( auto const& e : io.at( "inputs" ) )
    {
      cn.input_names.push_back( e.at( "name" ).get<std::string>() );
      cn.input_nodes.push_back( e.at( "node" ).get<node>() );
    }
    for ( auto const& e : io.at( "outputs" ) )
    {
      cn.output_names.push_back( e.at( "name" ).get<std::string>() );
      cn.output_nodes.push_back( e.at( "node" ).get<node>() );
    }
    for ( auto v : cn.input_nodes )
      if ( v >= cn.net.size() )
        fail( error_kind::format_error, "input node out of range" );
    for ( auto v : cn.output_nodes )
      if ( v >= cn.net.size() )
        fail( error_kind::format_error, "output node out of range" );
    cn.read_time = io.at( "read_time" ).get<std::size_t>();
    cn.family = io.value( "family", std::string() );
    cn.netlist = io.value( "circuit", std::string() );
    return cn;
  }
  catch ( nlohmann::json::exception const& e )
  {
    fail( error_kind::format_error, e.what() );
  }
}

} // namespace totnet
