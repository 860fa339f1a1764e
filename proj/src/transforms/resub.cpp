#include <map>
#include <random>

#include "aigopt/transforms.hpp"
#include "transform_util.hpp"

namespace aigopt {

namespace {

constexpr uint32_t window_depth = 4;
constexpr uint32_t max_window_leaves = 12;
constexpr uint32_t max_divisors = 64;
constexpr uint32_t merge_sig_words = 4;
constexpr uint32_t max_merge_support = 14;
constexpr size_t max_merge_cone = 1000;

using sig_t = std::array<uint64_t, merge_sig_words>;

// ---------------------------------------------------------------------------
// pass A: merge functionally equivalent nodes across the whole graph
// ---------------------------------------------------------------------------

// combinational-input support of a cone, capped; fails when `forbidden`
// shows up inside the cone (replacing it with this cone would make a cycle)
bool collect_support( const work_aig& w, uint32_t root, std::vector<uint32_t>& support, size_t cap,
                      uint32_t forbidden = UINT32_MAX )
{
  std::vector<uint32_t> stack{ root };
  std::vector<uint32_t> seen;
  while ( !stack.empty() )
  {
    const uint32_t x = stack.back();
    stack.pop_back();
    if ( x == forbidden )
    {
      return false;
    }
    if ( std::find( seen.begin(), seen.end(), x ) != seen.end() )
    {
      continue;
    }
    seen.push_back( x );
    if ( seen.size() > cap )
    {
      return false;
    }
    if ( w.is_ci( x ) )
    {
      support.push_back( x );
      continue;
    }
    if ( x == 0 )
    {
      continue;
    }
    stack.push_back( w.fanin0( x ).index() );
    stack.push_back( w.fanin1( x ).index() );
  }
  std::sort( support.begin(), support.end() );
  support.erase( std::unique( support.begin(), support.end() ), support.end() );
  return true;
}

// exhaustive comparison of two cones over the union of their CI supports
bool proven_same_function( const work_aig& w, uint32_t a, uint32_t b, bool& complement )
{
  std::vector<uint32_t> support;
  if ( !collect_support( w, a, support, max_merge_cone, b ) ||
       !collect_support( w, b, support, max_merge_cone ) )
  {
    return false;
  }
  std::sort( support.begin(), support.end() );
  support.erase( std::unique( support.begin(), support.end() ), support.end() );
  if ( support.size() > max_merge_support )
  {
    return false;
  }
  const uint32_t num_vars = static_cast<uint32_t>( support.size() );
  std::unordered_map<uint32_t, uint32_t> leaf_var;
  for ( uint32_t k = 0; k < num_vars; ++k )
  {
    leaf_var.emplace( support[k], k );
  }
  std::unordered_map<uint32_t, ttd> values;
  const ttd fa = detail::cone_function( w, a, num_vars, leaf_var, values );
  const ttd fb = detail::cone_function( w, b, num_vars, leaf_var, values );
  if ( fa == fb )
  {
    complement = false;
    return true;
  }
  if ( fa == ~fb )
  {
    complement = true;
    return true;
  }
  return false;
}

void merge_equivalents( work_aig& w )
{
  // random signatures distinguish almost everything cheaply; matches are
  // then proven exhaustively before any merge
  std::mt19937_64 rng( 0x9E3779B97F4A7C15ull );
  std::vector<uint64_t> ci_words( static_cast<size_t>( w.num_cis() ) * merge_sig_words );
  for ( auto& word : ci_words )
  {
    word = rng();
  }
  const auto sim = w.simulate_all( ci_words, merge_sig_words );

  std::map<sig_t, uint32_t> by_sig;
  const uint32_t end = w.size();
  for ( uint32_t n = w.first_and(); n < end; ++n )
  {
    if ( !w.is_alive( n ) )
    {
      continue;
    }
    sig_t sig;
    sig_t neg;
    for ( uint32_t k = 0; k < merge_sig_words; ++k )
    {
      sig[k] = sim[n * merge_sig_words + k];
      neg[k] = ~sig[k];
    }
    uint32_t other = UINT32_MAX;
    if ( const auto it = by_sig.find( sig ); it != by_sig.end() )
    {
      other = it->second;
    }
    else if ( const auto itn = by_sig.find( neg ); itn != by_sig.end() )
    {
      other = itn->second;
    }
    if ( other != UINT32_MAX && w.is_alive( other ) )
    {
      bool comp_proof = false;
      if ( proven_same_function( w, other, n, comp_proof ) )
      {
        w.replace( n, literal( other, comp_proof ) );
        continue;
      }
    }
    if ( other == UINT32_MAX )
    {
      by_sig.emplace( sig, n );
    }
  }
}

// ---------------------------------------------------------------------------
// pass B: windowed resubstitution with at most two divisors
// ---------------------------------------------------------------------------

struct window {
  std::vector<uint32_t> leaves;   // sorted
  std::vector<uint32_t> divisors; // nodes expressible over the leaves, below the root
};

bool build_window( const work_aig& w, uint32_t n, uint32_t depth, window& win )
{
  win.leaves.clear();
  win.divisors.clear();
  std::vector<std::pair<uint32_t, uint32_t>> stack{ { n, 0 } }; // (node, depth)
  std::vector<uint32_t> seen;
  while ( !stack.empty() )
  {
    const auto [x, d] = stack.back();
    stack.pop_back();
    if ( std::find( seen.begin(), seen.end(), x ) != seen.end() )
    {
      continue;
    }
    seen.push_back( x );
    if ( x != n )
    {
      if ( !w.is_and_index( x ) || d >= depth )
      {
        win.leaves.push_back( x );
        continue;
      }
    }
    stack.emplace_back( w.fanin0( x ).index(), d + 1 );
    stack.emplace_back( w.fanin1( x ).index(), d + 1 );
  }
  std::sort( win.leaves.begin(), win.leaves.end() );
  win.leaves.erase( std::unique( win.leaves.begin(), win.leaves.end() ), win.leaves.end() );
  if ( win.leaves.size() > max_window_leaves )
  {
    return false;
  }

  // close the window upward: any node (other than the root) whose fanins are
  // both inside is itself a function of the leaves and can serve as a divisor;
  // this picks up side divisors that are not in the root's own cone
  std::vector<uint32_t> members = win.leaves;
  std::vector<uint32_t> inside = members;
  bool grew = true;
  while ( grew && win.divisors.size() < max_divisors )
  {
    grew = false;
    std::vector<uint32_t> adopted;
    for ( const uint32_t m : members )
    {
      for ( const uint32_t f : w.fanouts( m ) )
      {
        if ( f == n || !w.is_alive( f ) || w.level( f ) >= w.level( n ) )
        {
          continue;
        }
        if ( std::find( inside.begin(), inside.end(), f ) != inside.end() ||
             std::find( adopted.begin(), adopted.end(), f ) != adopted.end() )
        {
          continue;
        }
        const uint32_t c0 = w.fanin0( f ).index();
        const uint32_t c1 = w.fanin1( f ).index();
        if ( std::find( inside.begin(), inside.end(), c0 ) != inside.end() &&
             std::find( inside.begin(), inside.end(), c1 ) != inside.end() )
        {
          adopted.push_back( f );
        }
      }
    }
    std::sort( adopted.begin(), adopted.end() );
    for ( const uint32_t f : adopted )
    {
      if ( win.divisors.size() >= max_divisors )
      {
        break;
      }
      win.divisors.push_back( f );
      inside.push_back( f );
      grew = true;
    }
    members = std::move( adopted );
  }

  // the leaves themselves are divisors too
  win.divisors.insert( win.divisors.end(), win.leaves.begin(), win.leaves.end() );
  std::sort( win.divisors.begin(), win.divisors.end() );
  if ( win.divisors.size() > max_divisors )
  {
    win.divisors.resize( max_divisors );
  }
  return true;
}

bool try_resub_node( work_aig& w, uint32_t n, bool zero_cost )
{
  window win;
  bool ok = false;
  for ( uint32_t depth = window_depth; depth >= 2 && !ok; --depth )
  {
    ok = build_window( w, n, depth, win );
  }
  if ( !ok || win.divisors.empty() )
  {
    return false;
  }
  const uint32_t num_vars = static_cast<uint32_t>( win.leaves.size() );
  std::unordered_map<uint32_t, uint32_t> leaf_var;
  for ( uint32_t k = 0; k < num_vars; ++k )
  {
    leaf_var.emplace( win.leaves[k], k );
  }
  std::unordered_map<uint32_t, ttd> values;
  const ttd target = detail::cone_function( w, n, num_vars, leaf_var, values );

  if ( target.is_zero() || target.is_ones() )
  {
    w.replace( n, target.is_zero() ? lit_false : lit_true );
    return true;
  }

  std::vector<ttd> div_tt;
  div_tt.reserve( win.divisors.size() );
  for ( const uint32_t d : win.divisors )
  {
    div_tt.push_back( detail::cone_function( w, d, num_vars, leaf_var, values ) );
  }

  // zero-divisor form: the node duplicates an existing function
  for ( size_t i = 0; i < win.divisors.size(); ++i )
  {
    if ( div_tt[i] == target )
    {
      w.replace( n, literal( win.divisors[i], false ) );
      return true;
    }
    if ( ~div_tt[i] == target )
    {
      w.replace( n, literal( win.divisors[i], true ) );
      return true;
    }
  }

  // one fresh AND over two divisors, any polarities, plain or De Morgan OR
  const uint64_t t0 = target.words()[0];
  const uint64_t nt0 = ~t0;
  for ( size_t i = 0; i < win.divisors.size(); ++i )
  {
    for ( size_t j = i + 1; j < win.divisors.size(); ++j )
    {
      for ( uint8_t pol = 0; pol < 4; ++pol )
      {
        const uint64_t wi = ( pol & 1 ) ? ~div_tt[i].words()[0] : div_tt[i].words()[0];
        const uint64_t wj = ( pol & 2 ) ? ~div_tt[j].words()[0] : div_tt[j].words()[0];
        const uint64_t cand0 = wi & wj;
        bool out_comp;
        if ( cand0 == t0 )
        {
          out_comp = false;
        }
        else if ( cand0 == nt0 )
        {
          out_comp = true;
        }
        else
        {
          continue;
        }
        const ttd a = ( pol & 1 ) ? ~div_tt[i] : div_tt[i];
        const ttd b = ( pol & 2 ) ? ~div_tt[j] : div_tt[j];
        const ttd cand = a & b;
        if ( !( ( out_comp ? ~cand : cand ) == target ) )
        {
          continue;
        }
        const uint32_t wm = w.watermark();
        const literal root =
            w.make_and( literal( win.divisors[i], ( pol & 1 ) != 0 ),
                        literal( win.divisors[j], ( pol & 2 ) != 0 ) ) ^
            out_comp;
        if ( root.index() == n )
        {
          w.rollback_to( wm );
          continue;
        }
        const int64_t added = w.nodes_added( wm );
        const int64_t freed = w.freed_if_replaced( n, root.index() );
        if ( freed - added < ( zero_cost ? 0 : 1 ) )
        {
          w.rollback_to( wm );
          continue;
        }
        w.replace( n, root );
        return true;
      }
    }
  }
  return false;
}

} // namespace

aig resub( const aig& g, bool zero_cost )
{
  work_aig w( g );
  merge_equivalents( w );
  w.recompute_levels();
  const uint32_t end = w.size();
  for ( uint32_t n = w.first_and(); n < end; ++n )
  {
    if ( !w.is_alive( n ) )
    {
      continue;
    }
    try_resub_node( w, n, zero_cost );
#ifdef AIGOPT_RESUB_DEBUG
    w.check_consistency();
#endif
  }
  return w.to_aig();
}

} // namespace aigopt
