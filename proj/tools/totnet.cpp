// totnet command-line front end
#include <totnet/totnet.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifndef TOTNET_DATA_DIR
#define TOTNET_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace totnet;

namespace
{

enum exit_code : int
{
  ok = 0,
  usage = 1,
  data = 2,
  verification = 3
};

struct usage_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::uint64_t seed_or_random( std::optional<std::uint64_t> const& s )
{
  if ( s )
    return *s;
  auto v = random_seed();
  std::cerr << "seed: " << v << '\n';
  return v;
}

/* --graph FILE | --grid RxC [--torus] | --er N --p P */
struct graph_source
{
  std::string file;
  std::string grid;
  bool torus = false;
  std::size_t er = 0;
  double p = 0.5;

  void attach( CLI::App* app )
  {
    app->add_option( "--graph", file, "graph JSON file" );
    app->add_option( "--grid", grid, "grid dimensions RxC" );
    app->add_flag( "--torus", torus, "wrap grid edges" );
    app->add_option( "--er", er, "Erdos-Renyi node count" );
    app->add_option( "--p", p, "Erdos-Renyi edge probability" );
  }

  graph build( std::optional<std::uint64_t> const& seed ) const
  {
    int given = !file.empty() + !grid.empty() + ( er > 0 );
    if ( given != 1 )
      throw usage_error( "give exactly one of --graph, --grid, --er" );
    if ( !file.empty() )
      return graph_from_json( parse_json( read_text( file ) ) );
    if ( !grid.empty() )
    {
      auto x = grid.find( 'x' );
      if ( x == std::string::npos )
        throw usage_error( "--grid expects RxC" );
      return grid_graph( std::stoul( grid.substr( 0, x ) ), std::stoul( grid.substr( x + 1 ) ), torus );
    }
    if ( !( p > 0.0 && p < 1.0 ) )
      throw usage_error( "--p must lie in (0,1)" );
    return erdos_renyi( er, p, seed_or_random( seed ) );
  }

  static nlohmann::json parse_json( std::string const& text )
  {
    try
    {
      return nlohmann::json::parse( text );
    }
    catch ( nlohmann::json::exception const& e )
    {
      fail( error_kind::format_error, e.what() );
    }
  }
};

std::vector<std::string> split_rules( std::string const& s )
{
  std::vector<std::string> out;
  std::string cur;
  for ( char ch : s )
  {
    if ( ch == ' ' )
    {
      if ( !cur.empty() )
        out.push_back( cur ), cur.clear();
    }
    else
      cur += ch;
  }
  if ( !cur.empty() )
    out.push_back( cur );
  return out;
}

std::vector<bool> parse_bits( std::vector<std::string> const& toks )
{
  std::vector<bool> bits;
  for ( auto const& t : toks )
    for ( char ch : t )
    {
      if ( ch == '0' || ch == '1' )
        bits.push_back( ch == '1' );
      else if ( ch != ',' )
        throw usage_error( "input bits must be 0 or 1" );
    }
  return bits;
}

void emit( std::string const& out, std::string const& text )
{
  if ( out.empty() || out == "-" )
    std::cout << text;
  else
  {
    write_text( out, text );
    std::cerr << "wrote " << out << '\n';
  }
}

observation parse_observation( std::string const& s )
{
  if ( s == "final" )
    return observation::final;
  if ( s == "scan" )
    return observation::scan;
  throw usage_error( "--observation must be final or scan" );
}

void print_report( std::string const& name, verification_report const& rep, bool& all_ok )
{
  std::cout << ( rep.passed() ? "PASS " : "FAIL " ) << name << '\n';
  if ( rep.passed() )
    return;
  all_ok = false;
  for ( auto const& c : rep.checks )
    if ( !c.pass )
    {
      std::cout << "  " << c.name << " z=" << c.assignment << ": " << c.detail << '\n';
      for ( std::size_t s = 0; s < c.trajectory.size(); ++s )
        std::cout << "    s=" << s << ' ' << c.trajectory[s] << '\n';
    }
}

/* exhaustive cross-check of a compiled network against the netlist */
std::size_t cross_check( circuit const& c, compiled_network const& cn )
{
  auto const r = c.inputs.size();
  if ( r > 16 )
    return 0;
  std::size_t bad = 0;
  for ( std::uint64_t z = 0; z < ( std::uint64_t{ 1 } << r ); ++z )
  {
    std::vector<bool> in( r );
    for ( std::size_t k = 0; k < r; ++k )
      in[k] = ( z >> ( r - 1 - k ) ) & 1u;
    bad += run_compiled( cn, in ) != evaluate_circuit( c, in );
  }
  return bad;
}

int exit_for( error const& e )
{
  switch ( e.kind() )
  {
  case error_kind::bad_params:
  case error_kind::bad_rule:
  case error_kind::unknown_kind:
    return usage;
  default:
    return data;
  }
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "totalistic automata networks: dynamics, gate spectra, gadgets and circuit compilation" };
  app.require_subcommand( 1 );
  app.fallthrough();
  std::optional<std::uint64_t> seed;
  app.add_option( "--seed", seed, "master seed (random and printed when omitted)" );

  /* simulate */
  auto* sim = app.add_subcommand( "simulate", "evolve a configuration" );
  graph_source sim_g;
  sim_g.attach( sim );
  std::string sim_rule = "1", sim_init;
  std::size_t sim_steps = 10;
  bool sim_traj = false;
  sim->add_option( "--rule", sim_rule, "rule label, e.g. 12, threshold:2, isolated:3, interval:2:3" );
  sim->add_option( "--init", sim_init, "initial bits (default: random)" );
  sim->add_option( "--steps", sim_steps, "number of steps" );
  sim->add_flag( "--trajectory", sim_traj, "print every step" );

  /* fixed-points */
  auto* fpc = app.add_subcommand( "fixed-points", "enumerate or sample fixed points" );
  graph_source fp_g;
  fp_g.attach( fpc );
  std::string fp_rule = "1", fp_mode = "exhaustive", fp_out;
  std::size_t fp_trials = 10000, fp_tmax = 100;
  fpc->add_option( "--rule", fp_rule, "rule label" );
  fpc->add_option( "--mode", fp_mode, "exhaustive or sample" )->check( CLI::IsMember( { "exhaustive", "sample" } ) );
  fpc->add_option( "--trials", fp_trials, "random starts (sample mode)" );
  fpc->add_option( "--tmax", fp_tmax, "steps per start (sample mode)" );
  fpc->add_option( "--out", fp_out, "output file" );

  /* spectrum */
  auto* spc = app.add_subcommand( "spectrum", "gate spectrum of a fixed point" );
  graph_source sp_g;
  sp_g.attach( spc );
  std::string sp_rule = "1", sp_base, sp_format = "csv", sp_out;
  std::size_t sp_tmax = 10;
  unsigned sp_arity = 2;
  spc->add_option( "--rule", sp_rule, "rule label" );
  spc->add_option( "--base", sp_base, "fixed point bits (default: all zero)" );
  spc->add_option( "--tmax", sp_tmax, "horizon" );
  spc->add_option( "--arity", sp_arity, "number of inputs (1-3)" );
  spc->add_option( "--format", sp_format, "csv or json" )->check( CLI::IsMember( { "csv", "json" } ) );
  spc->add_option( "--out", sp_out, "output file" );

  /* gadget */
  auto* gad = app.add_subcommand( "gadget", "gate gadgets" );
  gad->require_subcommand( 1 );
  gad->fallthrough();
  auto* g_list = gad->add_subcommand( "list", "list gadget kinds and the shipped suite" );
  auto* g_verify = gad->add_subcommand( "verify", "verify gadgets exhaustively" );
  std::string gv_kind, gv_file, gv_dir = std::string( TOTNET_DATA_DIR ) + "/gadgets";
  bool gv_all = false;
  gadget_params gv_p;
  g_verify->add_option( "kind", gv_kind, "gadget kind" );
  g_verify->add_flag( "--all", gv_all, "whole shipped suite, built and loaded from --dir" );
  g_verify->add_option( "--file", gv_file, "bundle JSON to verify" );
  g_verify->add_option( "--dir", gv_dir, "directory of shipped bundles" );
  g_verify->add_option( "--alpha", gv_p.alpha, "clique parameter alpha" );
  g_verify->add_option( "--beta", gv_p.beta, "interval upper end beta" );
  g_verify->add_option( "--d", gv_p.d, "clock or wire length" );
  auto* g_build = gad->add_subcommand( "build", "build one gadget and write its bundle" );
  std::string gb_kind, gb_out;
  gadget_params gb_p;
  g_build->add_option( "kind", gb_kind, "gadget kind" )->required();
  g_build->add_option( "--alpha", gb_p.alpha, "clique parameter alpha" );
  g_build->add_option( "--beta", gb_p.beta, "interval upper end beta" );
  g_build->add_option( "--d", gb_p.d, "clock or wire length" );
  g_build->add_option( "--out", gb_out, "output file (default stdout)" );
  auto* g_export = gad->add_subcommand( "export", "write the shipped suite as bundles" );
  std::string ge_dir = std::string( TOTNET_DATA_DIR ) + "/gadgets";
  g_export->add_option( "--dir", ge_dir, "target directory" );
  auto* g_search = gad->add_subcommand( "search", "bounded search for a gadget" );
  unsigned gs_gate = gates::AND;
  std::size_t gs_tstar = 2, gs_budget = 6, gs_degree = 6, gs_outputs = 1, gs_clique = 0, gs_samples = 200000;
  std::string gs_rule, gs_out;
  unsigned gs_maxtheta = 2;
  bool gs_terminal = false;
  g_search->add_option( "--gate", gs_gate, "target gate id 0-15" )->check( CLI::Range( 0u, 15u ) );
  g_search->add_option( "--tstar", gs_tstar, "observation time" );
  g_search->add_option( "--rule", gs_rule, "uniform rule (default: per-node thresholds)" );
  g_search->add_option( "--max-threshold", gs_maxtheta, "largest per-node threshold" );
  g_search->add_option( "--budget", gs_budget, "node budget (<= 12)" );
  g_search->add_option( "--degree", gs_degree, "degree bound" );
  g_search->add_option( "--outputs", gs_outputs, "number of output nodes" );
  g_search->add_option( "--clique", gs_clique, "size of an active clique template" );
  g_search->add_option( "--samples", gs_samples, "random candidates per size beyond the exhaustive range" );
  g_search->add_flag( "--terminal-edges", gs_terminal, "allow edges between inputs and outputs" );
  g_search->add_option( "--out", gs_out, "bundle output file" );

  /* compile */
  auto* cmp = app.add_subcommand( "compile", "compile a netlist into an automata network" );
  std::string c_netlist, c_family = "threshold", c_out = "compiled.json";
  cmp->add_option( "netlist", c_netlist, "netlist file" )->required();
  cmp->add_option( "--family", c_family, "threshold | majority | isolated:A | interval:A:B" );
  cmp->add_option( "--out", c_out, "bundle file" );

  /* run-circuit */
  auto* run = app.add_subcommand( "run-circuit", "evaluate a compiled bundle" );
  std::string r_bundle = "compiled.json";
  std::vector<std::string> r_bits;
  run->add_option( "--bundle", r_bundle, "compiled bundle" );
  run->add_option( "bits", r_bits, "input bits" );

  /* er-table */
  auto* ert = app.add_subcommand( "er-table", "gate counts over Erdos-Renyi graphs" );
  experiment_config er_cfg;
  std::string er_rules, er_format = "csv", er_out, er_obs = "final";
  ert->add_option( "--rules", er_rules, "space separated rule labels (default: all 15)" );
  ert->add_option( "--p", er_cfg.p, "edge probability" );
  ert->add_option( "--graphs", er_cfg.graphs, "graph count" );
  ert->add_option( "--nodes", er_cfg.nodes, "nodes per graph" );
  ert->add_option( "--tmax", er_cfg.t_max, "horizon" );
  ert->add_option( "--observation", er_obs, "final or scan" );
  ert->add_option( "--format", er_format, "csv or json" )->check( CLI::IsMember( { "csv", "json" } ) );
  ert->add_option( "--out", er_out, "output file" );

  /* grid-table */
  auto* grt = app.add_subcommand( "grid-table", "fixed-point census and gate frequencies on a grid" );
  experiment_config gr_cfg;
  gr_cfg.topology = topology_kind::grid;
  std::string gr_rules, gr_format = "csv", gr_out, gr_obs = "final";
  bool gr_open = false, gr_sample_only = false;
  grt->add_option( "--rules", gr_rules, "space separated rule labels" );
  grt->add_option( "--rows", gr_cfg.rows, "grid rows" );
  grt->add_option( "--cols", gr_cfg.cols, "grid columns" );
  grt->add_flag( "--open", gr_open, "bounded grid instead of torus" );
  grt->add_option( "--trials", gr_cfg.trials, "random starts for the sampled census" );
  grt->add_option( "--tmax", gr_cfg.t_max, "horizon" );
  grt->add_flag( "--sample-only", gr_sample_only, "skip the exhaustive scan" );
  grt->add_option( "--observation", gr_obs, "final or scan" );
  grt->add_option( "--format", gr_format, "csv or json" )->check( CLI::IsMember( { "csv", "json" } ) );
  grt->add_option( "--out", gr_out, "output file" );

  /* bull */
  auto* bul = app.add_subcommand( "bull", "six-state bull cellular automaton" );
  bull_experiment_config b_cfg;
  std::string b_format = "csv", b_out, b_layout, b_config, b_obs = "scan";
  std::size_t b_steps = 0, b_preset = 0;
  bul->add_option( "--n", b_cfg.n, "ring length" );
  bul->add_option( "--trials", b_cfg.trials, "random starts" );
  bul->add_option( "--tmax", b_cfg.t_max, "horizon" );
  bul->add_option( "--layout", b_layout, "fixed class layout, digits 0-2 (default: random)" );
  bul->add_option( "--observation", b_obs, "scan or final" );
  bul->add_option( "--config", b_config, "print the evolution of this configuration instead" );
  bul->add_option( "--three-areas", b_preset, "evolve a three-area random start on a ring of this length" );
  bul->add_option( "--steps", b_steps, "steps for --config / --three-areas" );
  bul->add_option( "--format", b_format, "csv or json" )->check( CLI::IsMember( { "csv", "json" } ) );
  bul->add_option( "--out", b_out, "output file" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    int rc = app.exit( e );
    return rc == 0 ? ok : usage;
  }

  try
  {
    if ( *sim )
    {
      automata_network net( sim_g.build( seed ), parse_rule( sim_rule ) );
      configuration x( net.size() );
      if ( sim_init.empty() )
      {
        rng_engine rng( seed_or_random( seed ) );
        x = random_configuration( net.size(), rng );
      }
      else
        x = configuration::from_string( sim_init );
      x.check( configuration( net.size() ) );
      if ( sim_traj )
        for ( auto const& c : trajectory( net, x, sim_steps ) )
          std::cout << c.to_string() << '\n';
      else
        std::cout << evolve( net, x, sim_steps ).to_string() << '\n';
      return ok;
    }
    if ( *fpc )
    {
      automata_network net( fp_g.build( seed ), parse_rule( fp_rule ) );
      std::vector<configuration> fps;
      nlohmann::json j{ { "rule", fp_rule }, { "mode", fp_mode }, { "nodes", net.size() } };
      if ( fp_mode == "exhaustive" )
        fps = enumerate_fixed_points( net );
      else
      {
        auto s = seed_or_random( seed );
        fps = sample_fixed_points( net, fp_trials, fp_tmax, s );
        j["seed"] = s;
        j["trials"] = fp_trials;
        j["t_max"] = fp_tmax;
      }
      j["count"] = fps.size();
      for ( auto const& f : fps )
        j["fixed_points"].push_back( f.to_string() );
      if ( fp_out.empty() )
      {
        std::cout << "count " << fps.size() << '\n';
        for ( auto const& f : fps )
          std::cout << f.to_string() << '\n';
      }
      else
        emit( fp_out, j.dump( 2 ) + "\n" );
      return ok;
    }
    if ( *spc )
    {
      automata_network net( sp_g.build( seed ), parse_rule( sp_rule ) );
      auto base = sp_base.empty() ? configuration( net.size() ) : configuration::from_string( sp_base );
      auto rep = spectrum_over_time( net, base, sp_tmax, sp_arity );
      emit( sp_out, sp_format == "csv" ? to_csv( rep ) : to_json( rep ).dump( 2 ) + "\n" );
      return ok;
    }
    if ( *g_list )
    {
      std::cout << "kinds:";
      for ( auto const& k : gadget_kinds() )
        std::cout << ' ' << k;
      std::cout << "\nsuite:\n";
      for ( auto const& e : shipped_suite() )
        std::cout << "  " << e.name << '\n';
      return ok;
    }
    if ( *g_verify )
    {
      bool all_ok = true;
      if ( gv_all )
      {
        for ( auto const& e : shipped_suite() )
          print_report( e.name, verify_gadget( build_gadget( e.kind, e.params ) ), all_ok );
        if ( fs::is_directory( gv_dir ) )
        {
          std::vector<fs::path> files;
          for ( auto const& f : fs::directory_iterator( gv_dir ) )
            if ( f.path().extension() == ".json" )
              files.push_back( f.path() );
          std::sort( files.begin(), files.end() );
          for ( auto const& f : files )
          {
            auto g = gadget_from_json( graph_source::parse_json( read_text( f.string() ) ) );
            print_report( "file:" + f.filename().string(), verify_gadget( g ), all_ok );
          }
        }
      }
      else if ( !gv_file.empty() )
        print_report( gv_file, verify_gadget( gadget_from_json( graph_source::parse_json( read_text( gv_file ) ) ) ), all_ok );
      else if ( !gv_kind.empty() )
        print_report( gv_kind, verify_gadget( build_gadget( gv_kind, gv_p ) ), all_ok );
      else
        throw usage_error( "give a kind, --file or --all" );
      return all_ok ? ok : verification;
    }
    if ( *g_build )
    {
      auto g = build_gadget( gb_kind, gb_p );
      emit( gb_out, to_json( g ).dump( 2 ) + "\n" );
      return verify_gadget( g ).passed() ? ok : verification;
    }
    if ( *g_export )
    {
      fs::create_directories( ge_dir );
      bool all_ok = true;
      for ( auto const& e : shipped_suite() )
      {
        auto g = build_gadget( e.kind, e.params );
        g.kind = e.name;
        all_ok = all_ok && verify_gadget( g ).passed();
        write_text( ( fs::path( ge_dir ) / ( e.name + ".json" ) ).string(), to_json( g ).dump( 2 ) + "\n" );
      }
      std::cout << "exported " << shipped_suite().size() << " bundles to " << ge_dir << '\n';
      return all_ok ? ok : verification;
    }
    if ( *g_search )
    {
      search_spec spec;
      spec.target = gate_from_id( gs_gate );
      spec.t_star = gs_tstar;
      if ( !gs_rule.empty() )
        spec.rule = parse_rule( gs_rule );
      spec.max_threshold = gs_maxtheta;
      spec.outputs = gs_outputs;
      spec.clique = gs_clique;
      spec.terminal_edges = gs_terminal;
      auto s = seed_or_random( seed );
      auto res = search_gadget( spec, gs_budget, gs_degree, s, gs_samples );
      std::cerr << "examined " << res.stats.examined << ", passing " << res.stats.passed << ", largest size " << res.stats.max_nodes
                << ( res.stats.exhaustive ? " (exhaustive)" : " (sampled)" ) << '\n';
      if ( !res.found )
      {
        std::cout << "not found\n";
        return verification;
      }
      emit( gs_out, to_json( *res.found ).dump( 2 ) + "\n" );
      return ok;
    }
    if ( *cmp )
    {
      auto fam = parse_family( c_family );
      auto c = parse_circuit( read_text( c_netlist ) );
      auto layered = layerize( c, fam.monotone() ? layer_mode::monotone : layer_mode::nand );
      auto cn = compile_circuit( layered, fam );
      auto bad = cross_check( c, cn );
      emit( c_out, to_json( cn ).dump( 2 ) + "\n" );
      std::cout << "nodes " << cn.net.size() << ", depth " << layered.depth() << ", read time " << cn.read_time << '\n';
      if ( bad )
      {
        std::cout << bad << " input assignments disagree with the netlist\n";
        return verification;
      }
      return ok;
    }
    if ( *run )
    {
      auto cn = compiled_from_json( graph_source::parse_json( read_text( r_bundle ) ) );
      auto bits = parse_bits( r_bits );
      auto out = run_compiled( cn, bits );
      for ( std::size_t k = 0; k < out.size(); ++k )
        std::cout << ( k ? " " : "" ) << out[k];
      std::cout << '\n';
      if ( !cn.netlist.empty() && evaluate_circuit( parse_circuit( cn.netlist ), bits ) != out )
      {
        std::cerr << "network output disagrees with the netlist\n";
        return verification;
      }
      return ok;
    }
    if ( *ert )
    {
      if ( !er_rules.empty() )
        er_cfg.rules = split_rules( er_rules );
      er_cfg.seed = seed_or_random( seed );
      er_cfg.obs = parse_observation( er_obs );
      auto rep = run_spectrum_table( er_cfg );
      emit( er_out, er_format == "csv" ? to_csv( rep ) : to_json( rep ).dump( 2 ) + "\n" );
      return ok;
    }
    if ( *grt )
    {
      if ( !gr_rules.empty() )
        gr_cfg.rules = split_rules( gr_rules );
      gr_cfg.torus = !gr_open;
      gr_cfg.exhaustive = !gr_sample_only;
      gr_cfg.seed = seed_or_random( seed );
      gr_cfg.obs = parse_observation( gr_obs );
      auto rep = grid_experiment( gr_cfg );
      emit( gr_out, gr_format == "csv" ? to_csv( rep ) : to_json( rep ).dump( 2 ) + "\n" );
      return ok;
    }
    if ( *bul )
    {
      if ( !b_config.empty() || b_preset )
      {
        auto c = b_config.empty() ? three_areas_config( b_preset, seed_or_random( seed ) ) : bull_config::from_string( b_config );
        std::string text = c.to_string() + "\n";
        for ( std::size_t s = 0; s < b_steps; ++s )
          text += ( c = bull_step( c ) ).to_string() + "\n";
        emit( b_out, text );
        return ok;
      }
      if ( !b_layout.empty() )
      {
        std::vector<std::uint8_t> l;
        for ( char ch : b_layout )
        {
          if ( ch < '0' || ch > '2' )
            fail( error_kind::bad_alphabet, "layout digits must be 0, 1 or 2" );
          l.push_back( static_cast<std::uint8_t>( ch - '0' ) );
        }
        b_cfg.layout = l;
        b_cfg.n = l.size();
      }
      b_cfg.seed = seed_or_random( seed );
      b_cfg.obs = parse_observation( b_obs );
      auto rep = run_bull_experiment( b_cfg );
      emit( b_out, b_format == "csv" ? to_csv( rep ) : to_json( rep ).dump( 2 ) + "\n" );
      return ok;
    }
  }
  catch ( usage_error const& e )
  {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  }
  catch ( error const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for( e );
  }
  catch ( std::invalid_argument const& e )
  {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  }
  return ok;
}
