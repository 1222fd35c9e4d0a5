#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace totnet
{

/* TOTNET_THREADS caps the worker count; 0 or unset means hardware concurrency */
inline unsigned worker_count()
{
  unsigned hw = std::max( 1u, std::thread::hardware_concurrency() );
  if ( char const* env = std::getenv( "TOTNET_THREADS" ) )
  {
    try
    {
      long v = std::stol( env );
      if ( v > 0 )
        return static_cast<unsigned>( v );
    }
    catch ( ... )
    {
    }
  }
  return hw;
}

namespace detail
{
inline thread_local bool inside_worker = false;
}

/* runs f(i) for i in [0,n); callers write results by index so order never matters.
   nested calls run serially on the calling worker */
template<typename Fn>
void parallel_for( std::size_t n, Fn&& f, unsigned workers = 0 )
{
  if ( detail::inside_worker )
    workers = 1;
  if ( workers == 0 )
    workers = worker_count();
  workers = static_cast<unsigned>( std::min<std::size_t>( workers, n ) );
  if ( workers <= 1 )
  {
    for ( std::size_t i = 0; i < n; ++i )
      f( i );
    return;
  }
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve( workers );
  for ( unsigned w = 0; w < workers; ++w )
    pool.emplace_back( [&] {
      detail::inside_worker = true;
      for ( std::size_t i = next++; i < n; i = next++ )
      {
        try
        {
          f( i );
        }
        catch ( ... )
        {
          std::lock_guard lock( error_mutex );
          if ( !first_error )
            first_error = std::current_exception();
          next = n;
        }
      }
    } );
  for ( auto& t : pool )
    t.join();
  if ( first_error )
    std::rethrow_exception( first_error );
}

} // namespace totnet
