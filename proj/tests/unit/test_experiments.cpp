#include "oracle.hpp"

#include <totnet/experiments.hpp>

#include <catch_amalgamated.hpp>

#include <cstdlib>

using namespace totnet;

namespace
{
experiment_config small_er( double p )
{
  experiment_config c;
  c.p = p;
  c.graphs = 25;
  c.t_max = 30;
  c.seed = 7;
  return c;
}

struct thread_env
{
  explicit thread_env( char const* v ) { setenv( "TOTNET_THREADS", v, 1 ); }
  ~thread_env() { unsetenv( "TOTNET_THREADS" ); }
};
} // namespace

TEST_CASE( "ER table basics", "[experiments]" )
{
  auto rep = run_spectrum_table( small_er( 0.3 ) );
  REQUIRE( rep.rows.size() == 15 );
  for ( auto const& row : rep.rows )
  {
    INFO( row.rule );
    CHECK( row.population == 25 );
    for ( unsigned g = 1; g < 16; g += 2 )
      CHECK( row.counts[g] == 0 );
    for ( auto c : row.counts )
      CHECK( c <= 25 );
  }
  /* seeded population: some output stays dark under every assignment */
  CHECK( rep.row( "1" ).counts[0] == 25 );
  CHECK_THROWS_AS( rep.row( "99" ), error );
}

TEST_CASE( "ER counts match the reference spectrum", "[experiments]" )
{
  auto cfg = small_er( 0.4 );
  cfg.rules = { "1", "23" };
  cfg.graphs = 6;
  cfg.nodes = 7;
  cfg.t_max = 5;
  for ( auto obs : { observation::final, observation::scan } )
  {
    cfg.obs = obs;
    auto rep = run_spectrum_table( cfg );
    for ( std::size_t ri = 0; ri < cfg.rules.size(); ++ri )
    {
      std::vector<std::uint64_t> expect( 16, 0 );
      for ( std::size_t i = 0; i < cfg.graphs; ++i )
      {
        auto g = erdos_renyi( cfg.nodes, cfg.p, derive_seed( cfg.seed, i ) );
        auto ref = oracle::make( g, cfg.rules[ri] );
        std::set<unsigned> seen;
        for ( std::size_t t = obs == observation::final ? cfg.t_max : 1; t <= cfg.t_max; ++t )
          for ( auto const& [gid, m] : oracle::spectrum( ref, oracle::state( cfg.nodes, 0 ), t ) )
            seen.insert( gid );
        for ( auto gid : seen )
          ++expect[gid];
      }
      CHECK( rep.rows[ri].counts == expect );
    }
  }
}

TEST_CASE( "champion bundles verify", "[experiments]" )
{
  for ( auto obs : { observation::final, observation::scan } )
  {
    auto cfg = small_er( 0.5 );
    cfg.obs = obs;
    auto rep = run_spectrum_table( cfg );
    for ( auto const& row : rep.rows )
    {
      REQUIRE( row.best );
      CHECK( verify_gadget( row.best->bundle ).passed() );
      CHECK( row.best->bundle.contract.target.bits == row.best->gates.back() );
    }
  }
}

TEST_CASE( "reports do not depend on the thread count", "[experiments]" )
{
  auto cfg = small_er( 0.3 );
  std::string a, b;
  {
    thread_env env( "1" );
    a = to_json( run_spectrum_table( cfg ) ).dump();
  }
  {
    thread_env env( "7" );
    b = to_json( run_spectrum_table( cfg ) ).dump();
  }
  CHECK( a == b );
  auto other = cfg;
  other.seed = 8;
  CHECK( to_json( run_spectrum_table( other ) ).dump() != a );
}

TEST_CASE( "torus census", "[experiments]" )
{
  std::map<std::string, std::size_t> expect{ { "1", 41 },    { "2", 57 },   { "3", 9 },     { "4", 2 },    { "12", 9 },
                                             { "13", 1 },    { "14", 58 },  { "23", 57 },   { "24", 74 },  { "34", 34 },
                                             { "123", 25 },  { "124", 58 }, { "134", 74 },  { "234", 34 }, { "1234", 2 } };
  auto torus = grid_graph( 4, 4, true );
  for ( auto const& [rule, n] : expect )
  {
    INFO( rule );
    CHECK( enumerate_fixed_points( automata_network( torus, parse_rule( rule ) ) ).size() == n );
  }
}

TEST_CASE( "grid experiment", "[experiments]" )
{
  experiment_config cfg;
  cfg.topology = topology_kind::grid;
  cfg.rules = { "3", "13", "1234" };
  cfg.t_max = 12;
  cfg.trials = 500;
  cfg.seed = 7;
  auto rep = grid_experiment( cfg );
  CHECK( rep.row( "3" ).population == 9 );
  CHECK( rep.row( "13" ).population == 1 );
  CHECK( rep.row( "1234" ).population == 2 );
  for ( auto const& row : rep.rows )
  {
    CHECK( row.exhaustive == row.population );
    CHECK( row.sampled <= row.population );
    CHECK( row.sampled >= 1 );
    REQUIRE( row.best );
    CHECK( verify_gadget( row.best->bundle ).passed() );
  }
  /* the zero fixed point alone gives gate 0 at 100 percent */
  CHECK( rep.row( "13" ).percent()[0] == 100 );
  auto csv = to_csv( rep );
  CHECK( csv.rfind( "rule,fixed_points,0,1,", 0 ) == 0 );
  CHECK( csv.find( "\n13,1,100," ) != std::string::npos );

  cfg.exhaustive = false;
  auto sampled = grid_experiment( cfg );
  CHECK( sampled.row( "3" ).population == sampled.row( "3" ).sampled );
  CHECK_FALSE( sampled.row( "3" ).exhaustive );
}

TEST_CASE( "percent rounds half up", "[experiments]" )
{
  rule_row r;
  r.population = 8;
  r.counts[0] = 1; /* 12.5 */
  r.counts[2] = 3; /* 37.5 */
  r.counts[4] = 8;
  auto p = r.percent();
  CHECK( p[0] == 13 );
  CHECK( p[2] == 38 );
  CHECK( p[4] == 100 );
  r.population = 3;
  r.counts[0] = 1;
  CHECK( r.percent()[0] == 33 );
  r.counts[0] = 2;
  CHECK( r.percent()[0] == 67 );
  rule_row empty;
  CHECK( empty.percent()[0] == 0 );
}

TEST_CASE( "monotone rules stay monotone in tables", "[experiments]" )
{
  /* with degree bounded by the largest digit these rules act as thresholds */
  for ( std::string rule : { "1", "12", "123", "1234" } )
  {
    int top = rule.back() - '0';
    for ( int k = 0; k < 20; ++k )
    {
      auto g = erdos_renyi( 8, 0.3, derive_seed( 50, k ) );
      if ( g.max_degree() > static_cast<std::size_t>( top ) )
        continue;
      for ( auto gid : spectrum_over_time( automata_network( g, parse_rule( rule ) ), configuration( 8 ), 10, 2 ).cumulative() )
        CHECK( ( gid == 0 || gid == 8 || gid == 10 || gid == 12 || gid == 14 ) );
    }
  }
}

TEST_CASE( "config validation and output", "[experiments]" )
{
  auto bad = small_er( 0.0 );
  CHECK_THROWS_AS( bad.validate(), error );
  bad = small_er( 0.3 );
  bad.rules = {};
  CHECK_THROWS_AS( bad.validate(), error );
  bad = small_er( 0.3 );
  bad.rules = { "x" };
  CHECK_THROWS_AS( bad.validate(), error );
  bad = small_er( 0.3 );
  bad.t_max = 0;
  CHECK_THROWS_AS( bad.validate(), error );
  CHECK_THROWS_AS( grid_experiment( small_er( 0.3 ) ), error );

  auto cfg = small_er( 0.3 );
  cfg.rules = { "1" };
  auto rep = run_experiment( cfg );
  auto csv = to_csv( rep );
  CHECK( csv.rfind( "rule,0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15\n1,", 0 ) == 0 );
  auto j = to_json( rep );
  CHECK( j["seed"] == 7 );
  CHECK( j["config"]["observation"] == "final" );
  CHECK( parse_format( "json" ) == report_format::json );
  CHECK_THROWS_AS( parse_format( "xml" ), error );
  CHECK_THROWS_AS( read_text( "/nonexistent/dir/file" ), error );
  CHECK_THROWS_AS( write_text( "/nonexistent/dir/file", "x" ), error );
}
