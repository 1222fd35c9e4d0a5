#pragma once

#include <cstdint>
#include <random>

namespace totnet
{

inline std::uint64_t splitmix64( std::uint64_t& state )
{
  std::uint64_t z = ( state += 0x9e3779b97f4a7c15ull );
  z = ( z ^ ( z >> 30 ) ) * 0xbf58476d1ce4e5b9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94d049bb133111ebull;
  return z ^ ( z >> 31 );
}

/* independent stream seed for (master, index, salt) */
inline std::uint64_t derive_seed( std::uint64_t master, std::uint64_t index, std::uint64_t salt = 0 )
{
  std::uint64_t s = master;
  std::uint64_t a = splitmix64( s );
  s = a ^ ( index * 0xd1b54a32d192ed03ull ) ^ ( salt * 0x8cb92ba72f3d8dd7ull );
  splitmix64( s );
  return splitmix64( s );
}

using rng_engine = std::mt19937_64;

/* portable draws; the std distributions are implementation defined */
inline double uniform01( rng_engine& rng )
{
  return static_cast<double>( rng() >> 11 ) * 0x1.0p-53;
}

inline bool coin( rng_engine& rng )
{
  return ( rng() >> 63 ) != 0;
}

inline std::uint64_t uniform_below( rng_engine& rng, std::uint64_t bound )
{
  if ( bound <= 1 )
    return 0;
  std::uint64_t const limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do
  {
    r = rng();
  } while ( r >= limit );
  return r % bound;
}

inline std::uint64_t random_seed()
{
  std::random_device rd;
  return ( static_cast<std::uint64_t>( rd() ) << 32 ) ^ rd();
}

} // namespace totnet
