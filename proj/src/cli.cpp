#include "aigopt/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aigopt/agent.hpp"
#include "aigopt/aiger_io.hpp"
#include "aigopt/baselines.hpp"
#include "aigopt/bench_gen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace aigopt::cli {

namespace {

struct run_config {
  std::string command;
  std::string benchmark;
  uint32_t constraint_levels = 0;
  bool constraint_given = false;
  uint32_t episodes = 50;
  uint32_t iterations = 50;
  double gamma = 0.99;
  double lr = 0.01;
  uint64_t seed = 0;
  bool seed_given = false;
  std::string output;
  std::string script_path;
  std::string advantage = "return";
  reward_table ladder = reward_table::standard();
};

std::string output_root()
{
  if ( const char* env = std::getenv( "AIGOPT_OUTPUT_ROOT" ); env && *env )
  {
    return env;
  }
  return "runs";
}

std::string benchmark_stem( const std::string& path )
{
  return fs::path( path ).stem().string();
}

void apply_json_config( run_config& cfg, const json& j, const CLI::App& app )
{
  auto missing = [&]( const std::string& flag ) {
    const auto* opt = app.get_option_no_throw( flag );
    return opt == nullptr || opt->count() == 0;
  };
  if ( j.contains( "benchmark" ) && missing( "--benchmark" ) )
  {
    cfg.benchmark = j["benchmark"].get<std::string>();
  }
  if ( j.contains( "episodes" ) && missing( "--episodes" ) )
  {
    cfg.episodes = j["episodes"].get<uint32_t>();
  }
  if ( j.contains( "iterations" ) && missing( "--iterations" ) )
  {
    cfg.iterations = j["iterations"].get<uint32_t>();
  }
  if ( j.contains( "gamma" ) && missing( "--gamma" ) )
  {
    cfg.gamma = j["gamma"].get<double>();
  }
  if ( j.contains( "lr" ) && missing( "--lr" ) )
  {
    cfg.lr = j["lr"].get<double>();
  }
  if ( j.contains( "seed" ) && missing( "--seed" ) )
  {
    cfg.seed = j["seed"].get<uint64_t>();
    cfg.seed_given = true;
  }
  if ( j.contains( "output" ) && missing( "--output" ) )
  {
    cfg.output = j["output"].get<std::string>();
  }
  if ( j.contains( "script" ) && missing( "--script" ) )
  {
    cfg.script_path = j["script"].get<std::string>();
  }
  if ( j.contains( "advantage_mode" ) )
  {
    cfg.advantage = j["advantage_mode"].get<std::string>();
  }
  if ( j.contains( "constraint_levels" ) && missing( "--constraint-levels" ) )
  {
    cfg.constraint_levels = j["constraint_levels"].get<uint32_t>();
    cfg.constraint_given = true;
  }
  // per-benchmark constraint map, keyed by file stem
  if ( j.contains( "constraints" ) && missing( "--constraint-levels" ) && !cfg.benchmark.empty() )
  {
    const auto& m = j["constraints"];
    const auto stem = benchmark_stem( cfg.benchmark );
    if ( m.contains( stem ) )
    {
      cfg.constraint_levels = m[stem].get<uint32_t>();
      cfg.constraint_given = true;
    }
  }
  if ( j.contains( "reward_ladder" ) )
  {
    const auto& l = j["reward_ladder"];
    for ( size_t a = 0; a < 3; ++a )
    {
      cfg.ladder.met[a] = l["met"][a].get<double>();
      for ( size_t d = 0; d < 3; ++d )
      {
        cfg.ladder.not_met[d][a] = l["not_met"][d][a].get<double>();
      }
    }
  }
}

json config_to_json( const run_config& cfg )
{
  json j;
  j["command"] = cfg.command;
  j["benchmark"] = cfg.benchmark;
  j["constraint_levels"] = cfg.constraint_levels;
  j["episodes"] = cfg.episodes;
  j["iterations"] = cfg.iterations;
  j["gamma"] = cfg.gamma;
  j["lr"] = cfg.lr;
  j["seed"] = cfg.seed;
  j["output"] = cfg.output;
  j["advantage_mode"] = cfg.advantage;
  if ( !cfg.script_path.empty() )
  {
    j["script"] = cfg.script_path;
  }
  json ladder;
  ladder["met"] = cfg.ladder.met;
  ladder["not_met"] = cfg.ladder.not_met;
  j["reward_ladder"] = ladder;
  return j;
}

const npn_library& shared_library()
{
  static const npn_library lib = [] {
    const fs::path root = output_root();
    std::error_code ec;
    fs::create_directories( root, ec );
    return npn_library::load_or_generate( ( root / "npn4.lib" ).string() );
  }();
  return lib;
}

fs::path prepare_output_dir( run_config& cfg )
{
  fs::path dir;
  if ( !cfg.output.empty() )
  {
    dir = cfg.output;
  }
  else
  {
    dir = fs::path( output_root() ) /
          ( cfg.command + "-" + benchmark_stem( cfg.benchmark ) + "-s" + std::to_string( cfg.seed ) );
    cfg.output = dir.string();
  }
  fs::create_directories( dir );
  return dir;
}

void write_text( const fs::path& path, const std::string& text )
{
  std::ofstream out( path );
  if ( !out )
  {
    throw std::runtime_error( "cannot write '" + path.string() + "'" );
  }
  out << text;
}

void write_summary( const fs::path& dir, const run_config& cfg, const metrics& initial,
                    const metrics& best )
{
  json j;
  j["method"] = cfg.command;
  j["benchmark"] = cfg.benchmark;
  j["benchmark_stem"] = benchmark_stem( cfg.benchmark );
  j["constraint_levels"] = cfg.constraint_levels;
  j["seed"] = cfg.seed;
  j["initial"] = { { "nodes", initial.area_proxy },
                   { "levels", initial.delay_proxy },
                   { "constraint_met", initial.constraint_met } };
  j["best"] = { { "nodes", best.area_proxy },
                { "levels", best.delay_proxy },
                { "constraint_met", best.constraint_met } };
  const double impr =
      initial.area_proxy == 0
          ? 0.0
          : 100.0 * ( static_cast<double>( initial.area_proxy ) - best.area_proxy ) / initial.area_proxy;
  j["improvement_pct"] = impr;
  write_text( dir / "summary.json", j.dump( 2 ) + "\n" );
}

void write_flow( const fs::path& path, const std::vector<transform_id>& flow )
{
  std::ostringstream out;
  for ( const auto t : flow )
  {
    out << transform_name( t ) << "\n";
  }
  write_text( path, out.str() );
}

void print_summary_line( const run_config& cfg, const metrics& best )
{
  std::cout << benchmark_stem( cfg.benchmark ) << ": best nodes " << best.area_proxy << ", levels "
            << best.delay_proxy << ", constraint " << ( best.constraint_met ? "met" : "not met" )
            << "\n";
}

uint32_t effective_constraint( const run_config& cfg, const aig& design )
{
  if ( cfg.constraint_given )
  {
    return cfg.constraint_levels;
  }
  return levels( design ).max_level; // met at the start by construction
}

int cmd_train( run_config cfg )
{
  const aig design = strash( read_aiger_file( cfg.benchmark, true ) );
  cfg.constraint_levels = effective_constraint( cfg, design );
  const fs::path dir = prepare_output_dir( cfg );

  hyperparams hp;
  hp.episodes = cfg.episodes;
  hp.iterations = cfg.iterations;
  hp.learning_rate = cfg.lr;
  hp.discount = cfg.gamma;
  hp.seed = cfg.seed;
  hp.mode = cfg.advantage == "td" ? advantage_mode::one_step_td : advantage_mode::discounted_return;

  synthesis_env env( design, cfg.constraint_levels, cfg.iterations, shared_library(), cfg.ladder );

  std::ofstream step_csv( dir / "steps.csv" );
  std::ofstream episode_csv( dir / "episodes.csv" );
  run_hooks hooks;
  hooks.step_csv = &step_csv;
  hooks.episode_csv = &episode_csv;
  hooks.on_finish = [&]( const a2c_agent& agent ) {
    agent.save( ( dir / "actor.ckpt" ).string(), ( dir / "critic.ckpt" ).string() );
  };

  const auto result = run( env, hp, hooks );

  write_aiger_file( result.best_design, ( dir / "best.aig" ).string(), false );
  write_flow( dir / "best.flow", result.best_flow );
  write_text( dir / "run_config.json", config_to_json( cfg ).dump( 2 ) + "\n" );
  write_summary( dir, cfg, metrics_of( design, cfg.constraint_levels ), result.best_metrics );
  print_summary_line( cfg, result.best_metrics );
  return exit_ok;
}

int cmd_greedy( run_config cfg )
{
  const aig design = strash( read_aiger_file( cfg.benchmark, true ) );
  cfg.constraint_levels = effective_constraint( cfg, design );
  const fs::path dir = prepare_output_dir( cfg );

  const auto result = greedy( design, cfg.constraint_levels, shared_library() );

  std::ostringstream csv;
  csv << "iteration,action,nodes,levels,constraint_met\n";
  for ( size_t k = 0; k < result.history.size(); ++k )
  {
    const auto& h = result.history[k];
    csv << ( k + 1 ) << ',' << transform_name( h.chosen ) << ',' << h.m.area_proxy << ','
        << h.m.delay_proxy << ',' << ( h.m.constraint_met ? 1 : 0 ) << '\n';
  }
  write_text( dir / "greedy.csv", csv.str() );
  write_aiger_file( result.final_design, ( dir / "best.aig" ).string(), false );
  std::vector<transform_id> flow;
  flow.reserve( result.history.size() );
  for ( const auto& h : result.history )
  {
    flow.push_back( h.chosen );
  }
  write_flow( dir / "best.flow", flow );
  write_text( dir / "run_config.json", config_to_json( cfg ).dump( 2 ) + "\n" );
  const metrics final_m = metrics_of( result.final_design, cfg.constraint_levels );
  write_summary( dir, cfg, metrics_of( design, cfg.constraint_levels ), final_m );
  print_summary_line( cfg, final_m );
  return exit_ok;
}

int cmd_script( run_config cfg )
{
  const aig design = strash( read_aiger_file( cfg.benchmark, true ) );
  cfg.constraint_levels = effective_constraint( cfg, design );
  std::ifstream in( cfg.script_path );
  if ( !in )
  {
    throw aig_error( "cannot open script '" + cfg.script_path + "'" );
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const auto flow = parse_script( buffer.str() );

  const fs::path dir = prepare_output_dir( cfg );
  const auto result = run_script( design, flow, cfg.constraint_levels, shared_library() );

  write_aiger_file( result.design, ( dir / "best.aig" ).string(), false );
  write_flow( dir / "best.flow", flow );
  write_text( dir / "run_config.json", config_to_json( cfg ).dump( 2 ) + "\n" );
  write_summary( dir, cfg, metrics_of( design, cfg.constraint_levels ), result.m );
  print_summary_line( cfg, result.m );
  return exit_ok;
}

int cmd_random( run_config cfg )
{
  const aig design = strash( read_aiger_file( cfg.benchmark, true ) );
  cfg.constraint_levels = effective_constraint( cfg, design );
  const fs::path dir = prepare_output_dir( cfg );

  const auto result = random_search( design, cfg.constraint_levels, cfg.episodes, cfg.iterations,
                                     cfg.seed, shared_library() );

  write_aiger_file( result.best_design, ( dir / "best.aig" ).string(), false );
  write_flow( dir / "best.flow", result.best_flow );
  write_text( dir / "run_config.json", config_to_json( cfg ).dump( 2 ) + "\n" );
  write_summary( dir, cfg, metrics_of( design, cfg.constraint_levels ), result.best_metrics );
  print_summary_line( cfg, result.best_metrics );
  return exit_ok;
}

int cmd_stats( const run_config& cfg )
{
  const aig design = read_aiger_file( cfg.benchmark );
  const auto s = extract_stats( design );
  std::cout << "benchmark     " << benchmark_stem( cfg.benchmark ) << "\n"
            << "primary in    " << s.num_pi << "\n"
            << "primary out   " << s.num_po << "\n"
            << "and nodes     " << s.num_nodes << "\n"
            << "edges         " << s.num_edges << "\n"
            << "levels        " << s.num_levels << "\n"
            << "latches       " << s.num_latches << "\n"
            << "pct ands      " << s.pct_ands << "\n"
            << "pct nots      " << s.pct_nots << "\n";
  std::cout << "csv,benchmark,pi,po,nodes,edges,levels,latches,pct_ands,pct_nots\n";
  std::cout << "csv," << benchmark_stem( cfg.benchmark ) << ',' << s.num_pi << ',' << s.num_po << ','
            << s.num_nodes << ',' << s.num_edges << ',' << s.num_levels << ',' << s.num_latches << ','
            << s.pct_ands << ',' << s.pct_nots << "\n";
  return exit_ok;
}

struct compare_row {
  std::string benchmark;
  std::string method;
  uint32_t nodes = 0;
  uint32_t levels = 0;
  bool met = false;
  double improvement = 0.0;
};

int cmd_compare( const std::vector<std::string>& run_dirs, const std::string& output )
{
  std::vector<std::string> absent;
  std::vector<compare_row> rows;
  std::map<std::string, uint32_t> initial_nodes;
  std::ostringstream traces;
  traces << "method,benchmark,episode,iteration,action,nodes,levels,reward,constraint_met\n";

  for ( const auto& dir : run_dirs )
  {
    const fs::path summary_path = fs::path( dir ) / "summary.json";
    if ( !fs::exists( summary_path ) )
    {
      absent.push_back( summary_path.string() );
      continue;
    }
    std::ifstream in( summary_path );
    json j;
    in >> j;
    compare_row row;
    row.benchmark = j["benchmark_stem"].get<std::string>();
    row.method = j["method"].get<std::string>();
    row.nodes = j["best"]["nodes"].get<uint32_t>();
    row.levels = j["best"]["levels"].get<uint32_t>();
    row.met = j["best"]["constraint_met"].get<bool>();
    row.improvement = j["improvement_pct"].get<double>();
    rows.push_back( row );

    if ( !initial_nodes.count( row.benchmark ) )
    {
      compare_row init;
      init.benchmark = row.benchmark;
      init.method = "initial";
      init.nodes = j["initial"]["nodes"].get<uint32_t>();
      init.levels = j["initial"]["levels"].get<uint32_t>();
      init.met = j["initial"]["constraint_met"].get<bool>();
      init.improvement = 0.0;
      initial_nodes[row.benchmark] = init.nodes;
      rows.push_back( init );
    }

    // per-iteration traces when the run produced them
    for ( const char* name : { "steps.csv", "greedy.csv" } )
    {
      const fs::path trace_path = fs::path( dir ) / name;
      if ( !fs::exists( trace_path ) )
      {
        continue;
      }
      std::ifstream tin( trace_path );
      std::string line;
      std::getline( tin, line ); // header
      const bool has_episode = line.rfind( "episode", 0 ) == 0;
      while ( std::getline( tin, line ) )
      {
        if ( line.empty() )
        {
          continue;
        }
        traces << row.method << ',' << row.benchmark << ',';
        if ( has_episode )
        {
          traces << line;
        }
        else
        {
          // greedy traces carry no episode or reward column
          const auto last_comma = line.rfind( ',' );
          traces << "1," << line.substr( 0, last_comma ) << ",0" << line.substr( last_comma );
        }
        traces << '\n';
      }
    }
  }

  if ( !absent.empty() )
  {
    std::cerr << "missing run artifacts:\n";
    for ( const auto& a : absent )
    {
      std::cerr << "  " << a << "\n";
    }
    return exit_input;
  }
  if ( rows.empty() )
  {
    std::cerr << "no runs to compare\n";
    return exit_input;
  }

  std::stable_sort( rows.begin(), rows.end(), []( const compare_row& a, const compare_row& b ) {
    return a.benchmark != b.benchmark ? a.benchmark < b.benchmark : a.method < b.method;
  } );

  std::ostringstream csv;
  csv << "benchmark,method,nodes,levels,constraint_met,improvement_pct\n";
  std::cout << "benchmark      method    nodes  levels  met  impr%\n";
  std::map<std::string, std::pair<double, int>> method_impr;
  for ( const auto& r : rows )
  {
    std::cout << r.benchmark << "  " << r.method << "  " << r.nodes << "  " << r.levels << "  "
              << ( r.met ? "yes" : "no" ) << "  " << r.improvement << "\n";
    csv << r.benchmark << ',' << r.method << ',' << r.nodes << ',' << r.levels << ','
        << ( r.met ? 1 : 0 ) << ',' << r.improvement << '\n';
    auto& [sum, count] = method_impr[r.method];
    sum += r.improvement;
    ++count;
  }
  for ( const auto& [method, acc] : method_impr )
  {
    const double avg = acc.first / acc.second;
    std::cout << "average  " << method << "  improvement " << avg << "%\n";
    csv << "average," << method << ",,,," << avg << '\n';
  }

  const fs::path dir = output.empty() ? fs::path( output_root() ) / "compare" : fs::path( output );
  fs::create_directories( dir );
  write_text( dir / "compare.csv", csv.str() );
  write_text( dir / "traces.csv", traces.str() );
  return exit_ok;
}

} // namespace

int run_command( const std::vector<std::string>& args )
{
  CLI::App app{ "AIG optimization toolkit" };
  app.require_subcommand( 1 );

  run_config cfg;
  std::string config_path;
  std::vector<std::string> compare_dirs;

  auto add_common = [&]( CLI::App* cmd, bool needs_benchmark ) {
    if ( needs_benchmark )
    {
      cmd->add_option( "--benchmark", cfg.benchmark, "AIGER benchmark file" );
    }
    cmd->add_option( "--constraint-levels", cfg.constraint_levels, "delay constraint (levels)" )
        ->each( [&]( const std::string& ) { cfg.constraint_given = true; } );
    cmd->add_option( "--config", config_path, "JSON config file" );
    cmd->add_option( "--output", cfg.output, "output directory" );
    cmd->add_option( "--seed", cfg.seed, "random seed" )->each( [&]( const std::string& ) {
      cfg.seed_given = true;
    } );
  };

  auto* train = app.add_subcommand( "train", "train the agent on one benchmark" );
  add_common( train, true );
  train->add_option( "--episodes", cfg.episodes, "episode count" );
  train->add_option( "--iterations", cfg.iterations, "iterations per episode" );
  train->add_option( "--gamma", cfg.gamma, "discount factor" );
  train->add_option( "--lr", cfg.lr, "learning rate" );

  auto* greedy_cmd = app.add_subcommand( "greedy", "greedy area descent" );
  add_common( greedy_cmd, true );

  auto* script_cmd = app.add_subcommand( "script", "run a fixed transform script" );
  add_common( script_cmd, true );
  script_cmd->add_option( "--script", cfg.script_path, "script file, one transform per line" );

  auto* random_cmd = app.add_subcommand( "random", "uniform random search" );
  add_common( random_cmd, true );
  random_cmd->add_option( "--episodes", cfg.episodes, "episode count" );
  random_cmd->add_option( "--iterations", cfg.iterations, "iterations per episode" );

  auto* stats_cmd = app.add_subcommand( "stats", "print design statistics" );
  stats_cmd->add_option( "--benchmark", cfg.benchmark, "AIGER benchmark file" );

  auto* compare_cmd = app.add_subcommand( "compare", "tabulate results of prior runs" );
  compare_cmd->add_option( "runs", compare_dirs, "run directories" );
  compare_cmd->add_option( "--output", cfg.output, "output directory" );

  std::vector<std::string> reversed( args.rbegin(), args.rend() );
  try
  {
    app.parse( reversed );
  }
  catch ( const CLI::ParseError& e )
  {
    return app.exit( e ) == 0 ? exit_ok : exit_usage;
  }

  try
  {
    const CLI::App* active = app.get_subcommands().front();
    cfg.command = active->get_name();

    if ( !config_path.empty() )
    {
      std::ifstream in( config_path );
      if ( !in )
      {
        std::cerr << "cannot open config '" << config_path << "'\n";
        return exit_input;
      }
      json j;
      in >> j;
      apply_json_config( cfg, j, *active );
    }
    if ( ( cfg.command == "train" || cfg.command == "random" ) && !cfg.seed_given )
    {
      std::cerr << "a --seed is required for " << cfg.command << " runs\n";
      return exit_usage;
    }
    if ( cfg.command != "compare" && cfg.benchmark.empty() )
    {
      std::cerr << "a --benchmark is required\n";
      return exit_usage;
    }

    if ( cfg.command == "train" )
    {
      return cmd_train( cfg );
    }
    if ( cfg.command == "greedy" )
    {
      return cmd_greedy( cfg );
    }
    if ( cfg.command == "script" )
    {
      if ( cfg.script_path.empty() )
      {
        std::cerr << "a --script file is required\n";
        return exit_usage;
      }
      return cmd_script( cfg );
    }
    if ( cfg.command == "random" )
    {
      return cmd_random( cfg );
    }
    if ( cfg.command == "stats" )
    {
      return cmd_stats( cfg );
    }
    if ( cfg.command == "compare" )
    {
      return cmd_compare( compare_dirs, cfg.output );
    }
    return exit_usage;
  }
  catch ( const aiger_parse_error& e )
  {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_input;
  }
  catch ( const aig_error& e )
  {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  }
  catch ( const script_error& e )
  {
    std::cerr << "script error: " << e.what() << "\n";
    return exit_input;
  }
  catch ( const json::exception& e )
  {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_input;
  }
  catch ( const std::exception& e )
  {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

int main_entry( int argc, char** argv )
{
  std::vector<std::string> args;
  args.reserve( static_cast<size_t>( argc ) );
  for ( int k = 1; k < argc; ++k )
  {
    args.emplace_back( argv[k] );
  }
  return run_command( args );
}

} // namespace aigopt::cli
