#pragma once

#include "configuration.hpp"
#include "error.hpp"
#include "gate.hpp"
#include "graph.hpp"
#include "network.hpp"
#include "rule.hpp"
#include "spectrum.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace totnet
{

/* what a gadget promises: outputs equal `target` at t_star; frozen nodes stay 1 up to t_star;
   with a clock, outputs keep their base value before clock_d and inputs are read at clock_d */
struct gadget_contract
{
  gate_table target;
  std::size_t t_star = 1;
  std::vector<node> inputs;
  std::vector<node> outputs;
  std::vector<node> frozen;
  configuration base;
  std::optional<std::size_t> clock_d;

  std::size_t input_time() const { return clock_d.value_or( 0 ); }
};

enum class provenance
{
  constructed,
  searched,
  loaded
};

struct gadget
{
  std::string kind;
  automata_network net;
  gadget_contract contract;
  provenance origin = provenance::constructed;
};

struct verification_check
{
  std::string name;
  unsigned assignment = 0;
  bool pass = true;
  std::string detail;
  std::vector<std::string> trajectory; /* filled on failure */
};

struct verification_report
{
  std::vector<verification_check> checks;

  bool passed() const
  {
    for ( auto const& c : checks )
      if ( !c.pass )
        return false;
    return true;
  }

  std::size_t failures() const
  {
    std::size_t f = 0;
    for ( auto const& c : checks )
      f += !c.pass;
    return f;
  }
};

inline void check_contract_shape( gadget_contract const& c, std::size_t n )
{
  if ( c.base.size() != n )
    fail( error_kind::length_mismatch, "base configuration length differs from network size" );
  if ( c.t_star < 1 )
    fail( error_kind::bad_params, "t_star must be at least 1" );
  if ( c.target.arity != c.inputs.size() )
    fail( error_kind::wrong_arity, "target arity differs from input count" );
  if ( c.clock_d && *c.clock_d > c.t_star )
    fail( error_kind::bad_params, "clock delay beyond t_star" );
  std::vector<int> role( n, 0 );
  auto mark = [&]( std::vector<node> const& vs, int r ) {
    for ( auto v : vs )
    {
      if ( v >= n )
        fail( error_kind::bad_params, "contract node out of range" );
      if ( role[v] )
        fail( error_kind::bad_params, "inputs, outputs and frozen nodes must be disjoint" );
      role[v] = r;
    }
  };
  mark( c.inputs, 1 );
  mark( c.outputs, 2 );
  mark( c.frozen, 3 );
}

/* exhaustive check over all input assignments */
inline verification_report verify_gadget( gadget const& g )
{
  auto const& c = g.contract;
  check_contract_shape( c, g.net.size() );
  verification_report rep;
  auto const l = c.target.arity;
  auto const t_in = c.input_time();

  for ( unsigned z = 0; z < ( 1u << l ); ++z )
  {
    auto const zbits = assignment_bits( z, l );
    bool const want = c.target( z );
    verification_check out{ "outputs@t*", z }, frz{ "frozen", z }, hold{ "hold", z };
    std::vector<configuration> trace;
    auto x = c.base;
    for ( std::size_t s = 0; s <= c.t_star; ++s )
    {
      if ( s == t_in )
        x = perturb( x, c.inputs, zbits );
      trace.push_back( x );
      for ( auto v : c.frozen )
        if ( !x[v] && frz.pass )
        {
          frz.pass = false;
          frz.detail = "node " + std::to_string( v ) + " is 0 at step " + std::to_string( s );
        }
      if ( s < t_in )
        for ( auto v : c.outputs )
          if ( x[v] != c.base[v] && hold.pass )
          {
            hold.pass = false;
            hold.detail = "output " + std::to_string( v ) + " left its base value at step " + std::to_string( s );
          }
      if ( s == c.t_star )
        for ( auto v : c.outputs )
          if ( x[v] != want && out.pass )
          {
            out.pass = false;
            out.detail = "output " + std::to_string( v ) + " is " + std::to_string( x[v] ) + ", expected " + std::to_string( want );
          }
      if ( s < c.t_star )
        x = g.net.step( x );
    }
    for ( auto* chk : { &out, &frz, &hold } )
    {
      if ( chk == &frz && c.frozen.empty() )
        continue;
      if ( chk == &hold && t_in == 0 )
        continue;
      if ( !chk->pass )
        for ( auto const& cfg : trace )
          chk->trajectory.push_back( cfg.to_string() );
      rep.checks.push_back( std::move( *chk ) );
    }
  }
  return rep;
}

inline nlohmann::json rules_to_json( automata_network const& net )
{
  if ( net.rules().size() == 1 )
    return to_string( net.rules()[0] );
  nlohmann::json a = nlohmann::json::array();
  for ( auto const& r : net.rules() )
    a.push_back( to_string( r ) );
  return a;
}

inline std::vector<rule_spec> rules_from_json( nlohmann::json const& j )
{
  std::vector<rule_spec> rs;
  if ( j.is_string() )
    rs.push_back( parse_rule( j.get<std::string>() ) );
  else if ( j.is_array() )
    for ( auto const& r : j )
      rs.push_back( parse_rule( r.get<std::string>() ) );
  else
    fail( error_kind::format_error, "rule must be a string or an array of strings" );
  return rs;
}

inline nlohmann::json to_json( gadget const& g )
{
  auto const& c = g.contract;
  nlohmann::json j;
  j["kind"] = g.kind;
  j["graph"] = to_json( g.net.topology() );
  j["rule"] = rules_to_json( g.net );
  j["base"] = c.base.to_string();
  j["inputs"] = c.inputs;
  j["outputs"] = c.outputs;
  j["frozen"] = c.frozen;
  j["t_star"] = c.t_star;
  j["arity"] = c.target.arity;
  j["gate"] = c.target.bits;
  j["clock_d"] = c.clock_d ? nlohmann::json( *c.clock_d ) : nlohmann::json( nullptr );
  return j;
}

inline gadget gadget_from_json( nlohmann::json const& j )
{
  try
  {
    gadget g;
    g.kind = j.value( "kind", std::string( "loaded" ) );
    g.origin = provenance::loaded;
    g.net = automata_network( graph_from_json( j.at( "graph" ) ), rules_from_json( j.at( "rule" ) ) );
    auto& c = g.contract;
    c.base = configuration::from_string( j.at( "base" ).get<std::string>() );
    c.inputs = j.at( "inputs" ).get<std::vector<node>>();
    c.outputs = j.at( "outputs" ).get<std::vector<node>>();
    c.frozen = j.at( "frozen" ).get<std::vector<node>>();
    c.t_star = j.at( "t_star" ).get<std::size_t>();
    c.target = { j.value( "arity", static_cast<unsigned>( c.inputs.size() ) ), j.at( "gate" ).get<std::uint64_t>() };
    if ( j.contains( "clock_d" ) && !j["clock_d"].is_null() )
      c.clock_d = j["clock_d"].get<std::size_t>();
    check_contract_shape( c, g.net.size() );
    return g;
  }
  catch ( nlohmann::json::exception const& e )
  {
    fail( error_kind::format_error, e.what() );
  }
}

} // namespace totnet
