#include <totnet/gadget_library.hpp>
#include <totnet/gadget_search.hpp>

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

using namespace totnet;

TEST_CASE( "shipped suite verifies", "[gadget]" )
{
  for ( auto const& e : shipped_suite() )
  {
    INFO( e.name );
    auto g = build_gadget( e.kind, e.params );
    auto rep = verify_gadget( g );
    CHECK( rep.passed() );
    CHECK( rep.failures() == 0 );
  }
}

TEST_CASE( "every kind builds with defaults", "[gadget]" )
{
  for ( auto const& k : gadget_kinds() )
  {
    INFO( k );
    gadget_params p;
    if ( k.rfind( "interval", 0 ) == 0 )
      p = { 2, 3, 2 };
    CHECK( verify_gadget( build_gadget( k, p ) ).passed() );
  }
  CHECK_THROWS_AS( build_gadget( "nope" ), error );
  CHECK_THROWS_AS( build_gadget( "isolated_nand", { 2, 2, 1 } ), error );
  CHECK_THROWS_AS( build_gadget( "clock", { 3, 3, 0 } ), error );
  CHECK_THROWS_AS( build_gadget( "interval_nand", { 3, 2, 1 } ), error );
  CHECK_THROWS_AS( build_gadget( "rule1_delayed_nor", { 3, 3, 0 } ), error );
}

TEST_CASE( "larger isolated and interval parameters", "[gadget]" )
{
  for ( unsigned a : { 6u, 7u } )
    CHECK( verify_gadget( build_gadget( "isolated_nand", { a, a, 1 } ) ).passed() );
  for ( unsigned a : { 4u, 5u } )
    for ( std::size_t d : { 1u, 3u, 5u } )
      CHECK( verify_gadget( build_gadget( "clocked_nand", { a, a, d } ) ).passed() );
  for ( auto [a, b] : { std::pair{ 2u, 4u }, std::pair{ 3u, 3u }, std::pair{ 4u, 6u } } )
  {
    CHECK( verify_gadget( build_gadget( "interval_nand", { a, b, 1 } ) ).passed() );
    CHECK( verify_gadget( build_gadget( "interval_clocked_nand", { a, b, 4 } ) ).passed() );
    CHECK( verify_gadget( build_gadget( "interval_not", { a, b, 1 } ) ).passed() );
  }
}

TEST_CASE( "contract gate is the realized gate", "[gadget]" )
{
  for ( std::string k : { "threshold_and", "threshold_or", "majority_and", "majority_or", "rule1_xor", "rule1_nor", "isolated_nand",
                          "rule2_nand" } )
  {
    INFO( k );
    auto g = build_gadget( k );
    auto const& c = g.contract;
    /* the NOR blocker starts as a one-step pulse, so only the contract check applies */
    if ( k == "rule1_nor" )
    {
      CHECK_FALSE( is_fixed_point( g.net, c.base ) );
      CHECK( verify_gadget( g ).passed() );
      continue;
    }
    REQUIRE( is_fixed_point( g.net, c.base ) );
    for ( auto o : c.outputs )
      CHECK( realization( g.net, c.base, { c.inputs, o, c.t_star } ) == c.target );
  }
}

TEST_CASE( "clock trace", "[gadget]" )
{
  auto g = build_gadget( "clock", { 3, 3, 4 } );
  auto const q = g.contract.outputs[0];
  auto traj = trajectory( g.net, g.contract.base, 4 );
  std::string bits;
  for ( auto const& x : traj )
    bits += x[q] ? '1' : '0';
  CHECK( bits == "11110" );
  /* and it stays down */
  CHECK_FALSE( evolve( g.net, g.contract.base, 6 )[q] );
}

TEST_CASE( "corrupted threshold is caught", "[gadget]" )
{
  auto g = build_gadget( "threshold_and" );
  auto rules = g.net.rules();
  REQUIRE( rules.size() == g.net.size() );
  rules[2] = rule_spec::threshold( 1 ); /* middle node now ORs */
  gadget bad = g;
  bad.net = automata_network( g.net.topology(), rules );
  auto rep = verify_gadget( bad );
  CHECK_FALSE( rep.passed() );
  bool seen = false;
  for ( auto const& c : rep.checks )
    if ( !c.pass )
    {
      CHECK( c.name == "outputs@t*" );
      CHECK( ( c.assignment == 1 || c.assignment == 2 ) );
      CHECK( c.trajectory.size() == g.contract.t_star + 1 );
      seen = seen || c.assignment == 2;
    }
  CHECK( seen );
}

TEST_CASE( "frozen cliques stay on", "[gadget]" )
{
  for ( unsigned a : { 3u, 4u, 5u } )
  {
    nand_family fam = nand_family::isolated( a );
    network_builder b;
    b.clique( a + 1, true );
    auto net = b.network( fam.rule() );
    auto x = b.base();
    CHECK( is_fixed_point( net, x ) );
    CHECK( evolve( net, x, 5 ).all() );
  }
  /* a frozen violation is reported */
  auto g = build_gadget( "clock", { 3, 3, 3 } );
  REQUIRE( !g.contract.frozen.empty() );
  auto bad = g;
  bad.contract.frozen.push_back( bad.contract.outputs[0] );
  CHECK_THROWS_AS( verify_gadget( bad ), error );
  bad = g;
  bad.contract.base.set( bad.contract.frozen[0], false );
  CHECK_FALSE( verify_gadget( bad ).passed() );
}

TEST_CASE( "dual outputs agree", "[gadget]" )
{
  for ( std::string k : { "threshold_and", "isolated_nand", "clocked_nand", "interval_nand" } )
  {
    gadget_params p;
    if ( k == "interval_nand" )
      p = { 2, 3, 1 };
    auto g = build_gadget( k, p );
    REQUIRE( g.contract.outputs.size() == 2 );
    for ( unsigned z = 0; z < 4; ++z )
    {
      auto x = g.contract.base;
      for ( std::size_t s = 0; s < g.contract.t_star; ++s )
      {
        if ( s == g.contract.input_time() )
          x = perturb( x, g.contract.inputs, assignment_bits( z, 2 ) );
        x = g.net.step( x );
      }
      CHECK( x[g.contract.outputs[0]] == x[g.contract.outputs[1]] );
    }
  }
}

TEST_CASE( "gadget JSON round-trip", "[gadget]" )
{
  for ( auto const& e : shipped_suite() )
  {
    auto g = build_gadget( e.kind, e.params );
    auto j = to_json( g );
    auto back = gadget_from_json( nlohmann::json::parse( j.dump() ) );
    CHECK( to_json( back ) == j );
    CHECK( back.origin == provenance::loaded );
    CHECK( verify_gadget( back ).passed() );
  }
  CHECK_THROWS_AS( gadget_from_json( nlohmann::json::parse( R"({"graph":{"n":2,"edges":[]}})" ) ), error );
  auto j = to_json( build_gadget( "threshold_and" ) );
  j["base"] = "01";
  CHECK_THROWS_AS( gadget_from_json( j ), error );
  j = to_json( build_gadget( "threshold_and" ) );
  j["rule"] = 5;
  CHECK_THROWS_AS( gadget_from_json( j ), error );
}

TEST_CASE( "shipped gadget files match the builders", "[gadget]" )
{
  namespace fs = std::filesystem;
  fs::path dir = fs::path( TOTNET_DATA_DIR ) / "gadgets";
  REQUIRE( fs::is_directory( dir ) );
  for ( auto const& e : shipped_suite() )
  {
    INFO( e.name );
    std::ifstream in( dir / ( e.name + ".json" ) );
    REQUIRE( in.good() );
    auto j = nlohmann::json::parse( in );
    auto g = build_gadget( e.kind, e.params );
    g.kind = e.name;
    CHECK( j == to_json( g ) );
  }
}

TEST_CASE( "contract shape errors", "[gadget]" )
{
  auto g = build_gadget( "threshold_and" );
  auto bad = g;
  bad.contract.t_star = 0;
  CHECK_THROWS_AS( verify_gadget( bad ), error );
  bad = g;
  bad.contract.target = gates::NOT;
  CHECK_THROWS_AS( verify_gadget( bad ), error );
  bad = g;
  bad.contract.outputs.push_back( 99 );
  CHECK_THROWS_AS( verify_gadget( bad ), error );
  bad = g;
  bad.contract.clock_d = 5;
  CHECK_THROWS_AS( verify_gadget( bad ), error );
}

TEST_CASE( "majority OR from the quiescent base", "[gadget]" )
{
  auto g = build_gadget( "majority_or" );
  CHECK( g.contract.base.none() );
  CHECK( g.contract.frozen.empty() );
  /* a single-output version exists on five nodes */
  search_spec s;
  s.target = gate_from_id( gates::OR );
  s.rule = rule_spec::majority();
  auto r = search_gadget( s, 7, 6, 1 );
  REQUIRE( r.found );
  CHECK( r.found->net.size() == 5 );
  CHECK( r.found->contract.base.none() );
  CHECK( verify_gadget( *r.found ).passed() );
}
