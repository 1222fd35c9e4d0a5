#include "oracle.hpp"

#include <totnet/bull.hpp>
#include <totnet/experiments.hpp>

#include <catch_amalgamated.hpp>

using namespace totnet;

namespace
{
std::vector<int> as_ints( bull_config const& c )
{
  return { c.cells().begin(), c.cells().end() };
}
} // namespace

TEST_CASE( "bull step cases", "[bull]" )
{
  /* regular cell: exactly one active side neighbour */
  CHECK( bull_step( bull_config::from_string( "01000" ) ).to_string() == "10100" );
  /* right-modified cell also looks two to the right */
  CHECK( bull_step( bull_config::from_string( "21100" ) ).to_string()[0] == '2' );
  CHECK( bull_step( bull_config::from_string( "21000" ) ).to_string()[0] == '3' );
  /* left-modified cell looks two to the left */
  CHECK( bull_step( bull_config::from_string( "41010" ) ).to_string()[0] == '4' );
  CHECK( bull_step( bull_config::from_string( "40010" ) ).to_string()[0] == '5' );
  CHECK( bull_step( bull_config::from_string( "00000" ) ).to_string() == "00000" );
}

TEST_CASE( "bull step agrees with the case table", "[bull]" )
{
  rng_engine rng( 5 );
  for ( int k = 0; k < 500; ++k )
  {
    auto n = 5 + k % 20;
    bull_config c( random_bull_cells( n, rng ) );
    auto ref = oracle::bull_step( as_ints( c ) );
    auto got = bull_step( c );
    CHECK( as_ints( got ) == ref );
    CHECK( got.layout() == c.layout() );
    CHECK( bull_activity_step( c.layout(), c.activity() ) == got.activity() );
  }
}

TEST_CASE( "regular rings follow rule 90", "[bull]" )
{
  for ( std::size_t n = 5; n <= 14; ++n )
  {
    std::vector<std::uint8_t> regular( n, 0 );
    for ( std::uint64_t x = 0; x < ( std::uint64_t{ 1 } << n ); ++x )
    {
      std::uint64_t expect = 0;
      for ( std::size_t i = 0; i < n; ++i )
        if ( ( ( x >> ( ( i + 1 ) % n ) ) ^ ( x >> ( ( i + n - 1 ) % n ) ) ) & 1u )
          expect |= std::uint64_t{ 1 } << i;
      REQUIRE( bull_activity_step( regular, x ) == expect );
    }
  }
}

TEST_CASE( "bull errors", "[bull]" )
{
  CHECK_THROWS_AS( bull_config::from_string( "0126" ), error );
  CHECK_THROWS_AS( bull_config( std::vector<std::uint8_t>{ 0, 7 } ), error );
  CHECK_THROWS_AS( bull_step( bull_config::from_string( "0101" ) ), error );
  CHECK_THROWS_AS( bull_sample_fixed_points( 8, 10, 10, std::vector<std::uint8_t>( 7, 0 ), 1 ), error );
  CHECK_THROWS_AS( bull_sample_fixed_points( 8, 10, 10, std::vector<std::uint8_t>( 8, 3 ), 1 ), error );
  CHECK_THROWS_AS( bull_spectrum( bull_config::from_string( "01000" ), 5 ), error );
  CHECK_THROWS_AS( three_areas_config( 20, 1 ), error );
  bull_experiment_config cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS( run_bull_experiment( cfg ), error );
}

TEST_CASE( "sampled bull fixed points", "[bull]" )
{
  auto a = bull_sample_fixed_points( 12, 300, 60, std::nullopt, 3 );
  auto b = bull_sample_fixed_points( 12, 300, 60, std::nullopt, 3 );
  CHECK( a == b );
  CHECK_FALSE( a.empty() );
  for ( auto const& fp : a )
    CHECK( bull_is_fixed_point( fp ) );
  std::vector<std::uint8_t> layout( 12, 0 );
  layout[3] = 1;
  layout[8] = 2;
  for ( auto const& fp : bull_sample_fixed_points( 12, 200, 60, layout, 3 ) )
    CHECK( fp.layout() == layout );
}

TEST_CASE( "bull spectra", "[bull]" )
{
  /* quiescent ring: every gate has an even id */
  auto zero = bull_config::from_layout( { 0, 1, 2, 0, 0, 1, 0, 2, 0, 0 }, 0 );
  REQUIRE( bull_is_fixed_point( zero ) );
  auto rep = bull_spectrum( zero, 20 );
  CHECK( rep.rule == "1Bull" );
  for ( auto g : rep.cumulative() )
    CHECK( g % 2 == 0 );
  /* the spectrum matches a direct replay of the case table */
  for ( unsigned t = 1; t <= 6; ++t )
  {
    std::vector<std::uint64_t> tally( 16, 0 );
    auto const n = static_cast<int>( zero.size() );
    for ( int a = 0; a < n; ++a )
      for ( int b = 0; b < n; ++b )
        for ( int o = 0; o < n; ++o )
        {
          if ( a == b || o == a || o == b )
            continue;
          unsigned id = 0;
          for ( unsigned z = 0; z < 4; ++z )
          {
            auto x = as_ints( zero );
            x[a] = 2 * ( x[a] / 2 ) + ( z >> 1 );
            x[b] = 2 * ( x[b] / 2 ) + ( z & 1u );
            for ( unsigned s = 0; s < t; ++s )
              x = oracle::bull_step( x );
            if ( x[o] % 2 )
              id |= 1u << z;
          }
          ++tally[id];
        }
    CHECK( tally == rep.counts[t] );
  }
}

TEST_CASE( "bull experiment", "[bull]" )
{
  bull_experiment_config cfg;
  cfg.trials = 400;
  cfg.seed = 7;
  auto rep = run_bull_experiment( cfg );
  REQUIRE_FALSE( rep.fixed_points.empty() );
  CHECK( rep.gate_sets.size() == rep.fixed_points.size() );
  auto pooled = rep.pooled();
  CHECK( std::find( pooled.begin(), pooled.end(), gates::NAND ) != pooled.end() );
  /* the champion realizes NAND somewhere in the scan window */
  auto const& champ = rep.gate_sets[rep.champion];
  CHECK( std::find( champ.begin(), champ.end(), gates::NAND ) != champ.end() );
  for ( auto const& s : rep.gate_sets )
    CHECK( s.size() <= champ.size() );
  auto csv = to_csv( rep );
  CHECK( csv.find( "\n1Bull," + std::to_string( rep.fixed_points.size() ) + "," ) != std::string::npos );
  auto j = to_json( rep );
  CHECK( j["config"]["observation"] == "scan" );
  CHECK( j["fixed_points"] == rep.fixed_points.size() );
}

TEST_CASE( "three-area layout", "[bull]" )
{
  auto c = three_areas_config( 40, 9 );
  CHECK( c.size() == 40 );
  for ( std::size_t i = 8; i < 16; ++i )
    CHECK( c.cls( i ) == 0 );
  for ( std::size_t i = 24; i < 32; ++i )
    CHECK( c.cls( i ) == 0 );
  CHECK( three_areas_config( 40, 9 ) == c );
  auto long_run = bull_evolve( c, 50 );
  CHECK( long_run.layout() == c.layout() );
}
