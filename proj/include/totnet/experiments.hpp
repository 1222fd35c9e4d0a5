#pragma once

#include "gadget.hpp"
#include "graph.hpp"
#include "network.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "rule.hpp"
#include "spectrum.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace totnet
{

enum class topology_kind
{
  er,
  grid
};

struct experiment_config
{
  std::vector<std::string> rules = default_rule_list();
  topology_kind topology = topology_kind::er;
  double p = 0.1;
  std::size_t graphs = 100;
  std::size_t nodes = 10;
  std::size_t rows = 4, cols = 4;
  bool torus = true;
  std::size_t t_max = 100;
  std::uint64_t seed = 1;
  /* grid mode: random starts for the sampled census; exhaustive scan when it fits */
  std::size_t trials = 10000;
  bool exhaustive = true;
  observation obs = observation::final;

  void validate() const
  {
    if ( rules.empty() )
      fail( error_kind::bad_params, "rule list is empty" );
    for ( auto const& r : rules )
      parse_rule( r );
    if ( t_max < 1 )
      fail( error_kind::bad_params, "t_max must be at least 1" );
    if ( topology == topology_kind::er )
    {
      if ( !( p > 0.0 && p < 1.0 ) )
        fail( error_kind::bad_params, "edge probability must lie in (0,1)" );
      if ( graphs < 1 || nodes < 1 )
        fail( error_kind::bad_params, "graph count and node count must be positive" );
    }
    else
    {
      if ( rows < 1 || cols < 1 )
        fail( error_kind::bad_params, "grid dimensions must be positive" );
      if ( trials < 1 )
        fail( error_kind::bad_params, "trials must be at least 1" );
    }
  }
};

struct champion
{
  std::size_t index = 0; /* graph index (er) or fixed-point index (grid) */
  std::vector<unsigned> gates;
  gadget bundle;
};

struct rule_row
{
  std::string rule;
  std::vector<std::uint64_t> counts = std::vector<std::uint64_t>( 16, 0 );
  std::size_t population = 0; /* graphs or fixed points */
  std::optional<champion> best;
  /* grid census */
  std::size_t sampled = 0;
  std::optional<std::size_t> exhaustive;

  std::vector<unsigned> percent() const
  {
    std::vector<unsigned> out;
    for ( auto c : counts )
      out.push_back( population ? static_cast<unsigned>( ( 200 * c + population ) / ( 2 * population ) ) : 0u );
    return out;
  }
};

struct table_report
{
  experiment_config config;
  std::vector<rule_row> rows;

  rule_row const& row( std::string const& rule ) const
  {
    for ( auto const& r : rows )
      if ( r.rule == rule )
        return r;
    fail( error_kind::bad_rule, "rule '" + rule + "' not in report" );
  }
};

namespace detail
{
/* first (i1, i2, o) at time t realizing gate g, wrapped as a verifiable bundle */
inline gadget champion_bundle( automata_network const& net, configuration const& xbar, unsigned g, std::size_t t )
{
  auto const n = net.size();
  for ( node a = 0; a < n; ++a )
    for ( node b = 0; b < n; ++b )
    {
      if ( a == b )
        continue;
      for ( node o = 0; o < n; ++o )
      {
        if ( o == a || o == b )
          continue;
        io_setting s{ { a, b }, o, t };
        if ( realization( net, xbar, s ).bits != g )
          continue;
        gadget out;
        out.kind = "champion";
        out.origin = provenance::searched;
        out.net = net;
        out.contract.target = { 2, g };
        out.contract.t_star = t;
        out.contract.inputs = { a, b };
        out.contract.outputs = { o };
        out.contract.base = xbar;
        return out;
      }
    }
  fail( error_kind::construction_failed, "gate not realized at the requested time" );
}

inline std::size_t realization_time( spectrum_report const& r, unsigned g, observation obs )
{
  if ( obs == observation::final )
    return r.t_max;
  for ( std::size_t t = 1; t <= r.t_max; ++t )
    if ( r.multiplicity( t, g ) )
      return t;
  return r.t_max;
}

struct sample_result
{
  std::vector<unsigned> gates;
  spectrum_report report;
};

inline void accumulate( rule_row& row, std::vector<sample_result> const& results, std::vector<automata_network> const& nets,
                        std::vector<configuration> const& bases, observation obs )
{
  row.population = results.size();
  std::optional<std::size_t> best;
  for ( std::size_t i = 0; i < results.size(); ++i )
  {
    for ( auto g : results[i].gates )
      ++row.counts[g];
    if ( !best || results[i].gates.size() > results[*best].gates.size() )
      best = i;
  }
  if ( !best || results[*best].gates.empty() )
    return;
  auto const& r = results[*best];
  champion c;
  c.index = *best;
  c.gates = r.gates;
  auto const g = r.gates.back();
  auto const& net = nets.size() == 1 ? nets[0] : nets[*best];
  c.bundle = champion_bundle( net, bases[*best], g, realization_time( r.report, g, obs ) );
  row.best = std::move( c );
}
} // namespace detail

/* gate counts per rule over seeded ER graphs, all starting from the zero fixed point */
inline table_report run_spectrum_table( experiment_config const& cfg )
{
  cfg.validate();
  if ( cfg.topology != topology_kind::er )
    fail( error_kind::bad_params, "run_spectrum_table expects er topology" );
  table_report rep{ cfg, {} };
  std::vector<graph> graphs( cfg.graphs );
  for ( std::size_t i = 0; i < cfg.graphs; ++i )
    graphs[i] = erdos_renyi( cfg.nodes, cfg.p, derive_seed( cfg.seed, i ) );

  auto const R = cfg.rules.size();
  std::vector<automata_network> nets( R * cfg.graphs );
  std::vector<detail::sample_result> results( R * cfg.graphs );
  parallel_for( R * cfg.graphs, [&]( std::size_t k ) {
    auto const ri = k / cfg.graphs, gi = k % cfg.graphs;
    nets[k] = automata_network( graphs[gi], parse_rule( cfg.rules[ri] ) );
    auto& res = results[k];
    res.report = spectrum_over_time( nets[k], configuration( cfg.nodes ), cfg.t_max, 2 );
    res.report.graph_id = "er-" + std::to_string( gi );
    res.gates = gate_set( res.report, cfg.obs );
  } );
  for ( std::size_t ri = 0; ri < R; ++ri )
  {
    rule_row row;
    row.rule = cfg.rules[ri];
    auto first = static_cast<std::ptrdiff_t>( ri * cfg.graphs ), last = first + static_cast<std::ptrdiff_t>( cfg.graphs );
    std::vector<detail::sample_result> slice( results.begin() + first, results.begin() + last );
    std::vector<automata_network> net_slice( nets.begin() + first, nets.begin() + last );
    std::vector<configuration> bases( cfg.graphs, configuration( cfg.nodes ) );
    detail::accumulate( row, slice, net_slice, bases, cfg.obs );
    rep.rows.push_back( std::move( row ) );
  }
  return rep;
}

/* fixed graph, varying fixed point: census plus percent frequency of each gate */
inline table_report grid_experiment( experiment_config const& cfg )
{
  cfg.validate();
  if ( cfg.topology != topology_kind::grid )
    fail( error_kind::bad_params, "grid_experiment expects grid topology" );
  table_report rep{ cfg, {} };
  auto const g = grid_graph( cfg.rows, cfg.cols, cfg.torus );
  for ( std::size_t ri = 0; ri < cfg.rules.size(); ++ri )
  {
    rule_row row;
    row.rule = cfg.rules[ri];
    automata_network net( g, parse_rule( row.rule ) );
    auto sampled = sample_fixed_points( net, cfg.trials, cfg.t_max, derive_seed( cfg.seed, ri, 0x67 ) );
    row.sampled = sampled.size();
    std::vector<configuration> fps = sampled;
    if ( cfg.exhaustive )
    {
      fps = enumerate_fixed_points( net );
      row.exhaustive = fps.size();
    }
    std::vector<detail::sample_result> results( fps.size() );
    with_system( net, [&]( auto const& sys ) {
      parallel_for( fps.size(), [&]( std::size_t i ) {
        results[i].report = spectrum_over_time( sys, sys.encode( fps[i] ), cfg.t_max, 2 );
        results[i].report.rule = row.rule;
        results[i].report.graph_id = "fp-" + std::to_string( i );
        results[i].gates = gate_set( results[i].report, cfg.obs );
      } );
      return 0;
    } );
    detail::accumulate( row, results, { net }, fps, cfg.obs );
    rep.rows.push_back( std::move( row ) );
  }
  return rep;
}

inline table_report run_experiment( experiment_config const& cfg )
{
  return cfg.topology == topology_kind::er ? run_spectrum_table( cfg ) : grid_experiment( cfg );
}

inline nlohmann::json to_json( experiment_config const& c )
{
  nlohmann::json j;
  j["rules"] = c.rules;
  j["topology"] = c.topology == topology_kind::er ? "er" : "grid";
  if ( c.topology == topology_kind::er )
  {
    j["p"] = c.p;
    j["graphs"] = c.graphs;
    j["nodes"] = c.nodes;
  }
  else
  {
    j["rows"] = c.rows;
    j["cols"] = c.cols;
    j["torus"] = c.torus;
    j["trials"] = c.trials;
    j["exhaustive"] = c.exhaustive;
  }
  j["t_max"] = c.t_max;
  j["seed"] = c.seed;
  j["observation"] = c.obs == observation::final ? "final" : "scan";
  return j;
}

inline nlohmann::json to_json( table_report const& r )
{
  nlohmann::json j;
  j["config"] = to_json( r.config );
  j["seed"] = r.config.seed;
  auto& rows = j["rows"] = nlohmann::json::array();
  for ( auto const& row : r.rows )
  {
    nlohmann::json jr;
    jr["rule"] = row.rule;
    jr["counts"] = row.counts;
    jr["population"] = row.population;
    if ( r.config.topology == topology_kind::grid )
    {
      jr["percent"] = row.percent();
      jr["sampled_fixed_points"] = row.sampled;
      jr["exhaustive_fixed_points"] = row.exhaustive ? nlohmann::json( *row.exhaustive ) : nlohmann::json( nullptr );
    }
    if ( row.best )
    {
      jr["champion"] = { { "index", row.best->index }, { "gates", row.best->gates }, { "bundle", to_json( row.best->bundle ) } };
    }
    rows.push_back( std::move( jr ) );
  }
  return j;
}

/* "rule,0,...,15"; grid mode adds the census and reports percentages */
inline std::string to_csv( table_report const& r )
{
  bool const grid = r.config.topology == topology_kind::grid;
  std::ostringstream os;
  os << "rule";
  if ( grid )
    os << ",fixed_points";
  for ( int g = 0; g < 16; ++g )
    os << ',' << g;
  os << '\n';
  for ( auto const& row : r.rows )
  {
    os << row.rule;
    if ( grid )
      os << ',' << row.population;
    if ( grid )
      for ( auto v : row.percent() )
        os << ',' << v;
    else
      for ( auto v : row.counts )
        os << ',' << v;
    os << '\n';
  }
  return os.str();
}

inline void write_text( std::string const& path, std::string const& text )
{
  std::ofstream f( path, std::ios::binary );
  if ( !f )
    fail( error_kind::io_error, "cannot open '" + path + "' for writing" );
  f << text;
  if ( !f )
    fail( error_kind::io_error, "write to '" + path + "' failed" );
}

inline std::string read_text( std::string const& path )
{
  std::ifstream f( path, std::ios::binary );
  if ( !f )
    fail( error_kind::io_error, "cannot open '" + path + "'" );
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

enum class report_format
{
  csv,
  json
};

inline report_format parse_format( std::string const& s )
{
  if ( s == "csv" )
    return report_format::csv;
  if ( s == "json" )
    return report_format::json;
  fail( error_kind::bad_params, "format must be csv or json" );
}

inline void write_report( table_report const& r, report_format fmt, std::string const& path )
{
  write_text( path, fmt == report_format::csv ? to_csv( r ) : to_json( r ).dump( 2 ) + "\n" );
}

} // namespace totnet
