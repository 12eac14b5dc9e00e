// Copyright 2026 The PPRL-CBF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pprl/securesum/paillier.h"

#include <utility>

#include "pprl/common/error.h"

namespace pprl {

namespace {

mpz_class powm(const mpz_class& base, const mpz_class& exp,
               const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

mpz_class invert(const mpz_class& a, const mpz_class& mod) {
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw InvalidArgument("value not invertible");
  }
  return out;
}

mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

mpz_class random_unit(const mpz_class& n, BigRandom& rng) {
  while (true) {
    mpz_class r = rng.below(n);
    if (r != 0 && gcd(r, n) == 1) return r;
  }
}

bool is_prime(const mpz_class& v) {
  return mpz_probab_prime_p(v.get_mpz_t(), 30) > 0;
}

}  // namespace

mpz_class BigRandom::below(const mpz_class& bound) {
  if (bound <= 0) throw InvalidArgument("random bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  while (true) {
    mpz_class v = 0;
    for (std::size_t i = 0; i < words; ++i) {
      mpz_class word;
      const std::uint64_t w = engine_();
      mpz_import(word.get_mpz_t(), 1, 1, sizeof(w), 0, 0, &w);
      v = (v << 64) | word;
    }
    const std::size_t excess = words * 64 - bits;
    v >>= static_cast<mp_bitcnt_t>(excess);
    if (v < bound) return v;
  }
}

mpz_class BigRandom::with_bits(std::size_t bits) {
  if (bits == 0) throw InvalidArgument("bit count must be positive");
  mpz_class top = mpz_class(1) << static_cast<mp_bitcnt_t>(bits - 1);
  return top + below(top);
}

PaillierPublicKey::PaillierPublicKey(mpz_class n)
    : n_(std::move(n)), n_squared_(n_ * n_) {
  if (n_ < 3) throw InvalidArgument("Paillier modulus too small");
}

std::size_t PaillierPublicKey::modulus_bits() const {
  return mpz_sizeinbase(n_.get_mpz_t(), 2);
}

std::size_t PaillierPublicKey::ciphertext_bytes() const {
  return (mpz_sizeinbase(n_squared_.get_mpz_t(), 2) + 7) / 8;
}

mpz_class PaillierPublicKey::encrypt(const mpz_class& m, BigRandom& rng) const {
  if (m < 0 || m >= n_) throw InvalidArgument("plaintext outside [0, n)");
  const mpz_class r = random_unit(n_, rng);
  mpz_class c = (1 + m * n_) % n_squared_;
  c *= powm(r, n_, n_squared_);
  c %= n_squared_;
  return c;
}

mpz_class PaillierPublicKey::add(const mpz_class& a, const mpz_class& b) const {
  mpz_class c = a * b;
  c %= n_squared_;
  return c;
}

void PaillierPublicKey::check_range(const mpz_class& c) const {
  if (c <= 0 || c >= n_squared_) {
    throw ProtocolViolation("ciphertext outside (0, n^2)");
  }
}

void PaillierPublicKey::check_ciphertext(const mpz_class& c) const {
  check_range(c);
  if (gcd(c, n_) != 1) {
    throw ProtocolViolation("ciphertext not a unit modulo n");
  }
}

PaillierPrivateKey::PaillierPrivateKey(const mpz_class& p, const mpz_class& q)
    : p_(p), q_(q), n_(p * q), n_squared_(n_ * n_),
      p_squared_(p * p), q_squared_(q * q) {
  lambda_ = lcm(p_ - 1, q_ - 1);
  // With g = n + 1, L(g^lambda mod n^2) = lambda mod n.
  mu_ = invert(lambda_ % n_, n_);
  const mpz_class g = n_ + 1;
  hp_ = invert((powm(g, p_ - 1, p_squared_) - 1) / p_, p_);
  hq_ = invert((powm(g, q_ - 1, q_squared_) - 1) / q_, q_);
  q_inv_mod_p_ = invert(q_, p_);
  p2_inv_mod_q2_ = invert(p_squared_, q_squared_);
  n_mod_phi_p2_ = n_ % (p_ * (p_ - 1));
  n_mod_phi_q2_ = n_ % (q_ * (q_ - 1));
}

mpz_class PaillierPrivateKey::decrypt(const mpz_class& c) const {
  const mpz_class mp =
      ((powm(c % p_squared_, p_ - 1, p_squared_) - 1) / p_ * hp_) % p_;
  const mpz_class mq =
      ((powm(c % q_squared_, q_ - 1, q_squared_) - 1) / q_ * hq_) % q_;
  // Garner recombination: m = mq + q * ((mp - mq) * q^-1 mod p).
  mpz_class h = ((mp - mq) * q_inv_mod_p_) % p_;
  if (h < 0) h += p_;
  return mq + q_ * h;
}

mpz_class PaillierPrivateKey::encrypt(const mpz_class& m,
                                      BigRandom& rng) const {
  if (m < 0 || m >= n_) throw InvalidArgument("plaintext outside [0, n)");
  const mpz_class r = random_unit(n_, rng);
  const mpz_class xp = powm(r % p_squared_, n_mod_phi_p2_, p_squared_);
  const mpz_class xq = powm(r % q_squared_, n_mod_phi_q2_, q_squared_);
  mpz_class t = ((xq - xp) * p2_inv_mod_q2_) % q_squared_;
  if (t < 0) t += q_squared_;
  mpz_class rn = xp + p_squared_ * t;
  mpz_class c = (1 + m * n_) % n_squared_;
  c *= rn;
  c %= n_squared_;
  return c;
}

PaillierKeypair PaillierKeypair::from_primes(const mpz_class& p,
                                             const mpz_class& q) {
  if (p == q) throw InvalidArgument("Paillier primes must differ");
  if (!is_prime(p) || !is_prime(q)) {
    throw InvalidArgument("Paillier factors must be prime");
  }
  const mpz_class n = p * q;
  if (gcd(n, (p - 1) * (q - 1)) != 1) {
    throw InvalidArgument("gcd(pq, (p-1)(q-1)) must be 1");
  }
  return {PaillierPublicKey(n), PaillierPrivateKey(p, q)};
}

PaillierKeypair paillier_keygen(std::size_t bit_length, std::uint64_t seed) {
  if (bit_length < 16) {
    throw InvalidArgument("Paillier modulus needs at least 16 bits");
  }
  BigRandom rng(seed);
  const std::size_t p_bits = (bit_length + 1) / 2;
  const std::size_t q_bits = bit_length - p_bits;
  auto sample_prime = [&](std::size_t bits) {
    while (true) {
      // Top two bits set so the product reaches the full bit length.
      mpz_class base = rng.with_bits(bits);
      if (bits >= 2) base |= mpz_class(1) << static_cast<mp_bitcnt_t>(bits - 2);
      mpz_class prime;
      mpz_nextprime(prime.get_mpz_t(), base.get_mpz_t());
      if (mpz_sizeinbase(prime.get_mpz_t(), 2) == bits) return prime;
    }
  };
  while (true) {
    const mpz_class p = sample_prime(p_bits);
    const mpz_class q = sample_prime(q_bits);
    if (p == q) continue;
    const mpz_class n = p * q;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) != bit_length) continue;
    if (gcd(n, (p - 1) * (q - 1)) != 1) continue;
    return PaillierKeypair::from_primes(p, q);
  }
}

}  // namespace pprl
