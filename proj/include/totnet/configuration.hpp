#pragma once

#include "error.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace totnet
{

/* length-n bit vector, 64 nodes per word */
class configuration
{
public:
  configuration() = default;

  explicit configuration( std::size_t n, bool value = false )
      : n_( n ), words_( ( n + 63 ) / 64, value ? ~std::uint64_t{ 0 } : 0 )
  {
    trim();
  }

  static configuration from_string( std::string_view bits )
  {
    configuration c( bits.size() );
    for ( std::size_t i = 0; i < bits.size(); ++i )
    {
      if ( bits[i] != '0' && bits[i] != '1' )
        fail( error_kind::format_error, "configuration string must contain only 0 and 1" );
      c.set( i, bits[i] == '1' );
    }
    return c;
  }

  /* low n bits of a word, node i = bit i */
  static configuration from_word( std::uint64_t w, std::size_t n )
  {
    configuration c( n );
    if ( n > 0 )
      c.words_[0] = n >= 64 ? w : ( w & ( ( std::uint64_t{ 1 } << n ) - 1 ) );
    return c;
  }

  std::size_t size() const noexcept { return n_; }

  bool operator[]( std::size_t i ) const { return ( words_[i >> 6] >> ( i & 63 ) ) & 1u; }
  bool test( std::size_t i ) const { return ( *this )[i]; }

  void set( std::size_t i, bool v = true )
  {
    auto const mask = std::uint64_t{ 1 } << ( i & 63 );
    if ( v )
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  std::size_t count() const
  {
    std::size_t c = 0;
    for ( auto w : words_ )
      c += static_cast<std::size_t>( std::popcount( w ) );
    return c;
  }

  bool none() const
  {
    return std::all_of( words_.begin(), words_.end(), []( auto w ) { return w == 0; } );
  }
  bool all() const { return count() == n_; }

  std::uint64_t word( std::size_t k ) const { return words_[k]; }
  std::vector<std::uint64_t> const& words() const noexcept { return words_; }

  configuration& operator^=( configuration const& o )
  {
    check( o );
    for ( std::size_t k = 0; k < words_.size(); ++k )
      words_[k] ^= o.words_[k];
    return *this;
  }
  friend configuration operator^( configuration a, configuration const& b ) { return a ^= b; }

  /* pointwise a <= b */
  bool leq( configuration const& o ) const
  {
    check( o );
    for ( std::size_t k = 0; k < words_.size(); ++k )
      if ( words_[k] & ~o.words_[k] )
        return false;
    return true;
  }

  std::string to_string() const
  {
    std::string s( n_, '0' );
    for ( std::size_t i = 0; i < n_; ++i )
      if ( test( i ) )
        s[i] = '1';
    return s;
  }

  bool operator==( configuration const& ) const = default;

  /* canonical order: lexicographic on the 0/1 string */
  friend bool operator<( configuration const& a, configuration const& b ) { return a.to_string() < b.to_string(); }

  void check( configuration const& o ) const
  {
    if ( o.n_ != n_ )
      fail( error_kind::length_mismatch, "configuration lengths " + std::to_string( n_ ) + " and " + std::to_string( o.n_ ) );
  }

private:
  void trim()
  {
    if ( n_ % 64 != 0 && !words_.empty() )
      words_.back() &= ( std::uint64_t{ 1 } << ( n_ % 64 ) ) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace totnet
