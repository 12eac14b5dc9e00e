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

#ifndef PPRL_SECURESUM_PAILLIER_H_
#define PPRL_SECURESUM_PAILLIER_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <random>

namespace pprl {

// Uniform big integers from a seeded 64-bit engine, so that keys and
// ciphertexts are reproducible for a fixed seed.
class BigRandom {
 public:
  explicit BigRandom(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound). bound must be positive.
  mpz_class below(const mpz_class& bound);
  // Uniform with exactly `bits` bits (top bit set).
  mpz_class with_bits(std::size_t bits);

 private:
  std::mt19937_64 engine_;
};

// Public half of a Paillier key with generator g = n + 1.
class PaillierPublicKey {
 public:
  PaillierPublicKey() = default;
  explicit PaillierPublicKey(mpz_class n);

  const mpz_class& n() const { return n_; }
  const mpz_class& n_squared() const { return n_squared_; }
  mpz_class g() const { return n_ + 1; }
  std::size_t modulus_bits() const;
  // Width of one serialized ciphertext (bytes of n^2).
  std::size_t ciphertext_bytes() const;

  // Enc(m) = (1 + m n) r^n mod n^2 for fresh random r in Z*_n.
  // Requires 0 <= m < n.
  mpz_class encrypt(const mpz_class& m, BigRandom& rng) const;
  // Enc(a) * Enc(b) = Enc(a + b mod n).
  mpz_class add(const mpz_class& a, const mpz_class& b) const;
  // Throws ProtocolViolation unless 0 < c < n^2 and gcd(c, n) = 1.
  void check_ciphertext(const mpz_class& c) const;
  // The cheap half of check_ciphertext: 0 < c < n^2 only.
  void check_range(const mpz_class& c) const;

 private:
  mpz_class n_;
  mpz_class n_squared_;
};

// Private half, kept by the linkage unit (or a ring's initiating party).
// Decryption and key-holder encryption use the CRT over p^2 and q^2.
class PaillierPrivateKey {
 public:
  PaillierPrivateKey() = default;
  PaillierPrivateKey(const mpz_class& p, const mpz_class& q);

  const mpz_class& lambda() const { return lambda_; }
  const mpz_class& mu() const { return mu_; }

  mpz_class decrypt(const mpz_class& c) const;
  // Same distribution as PaillierPublicKey::encrypt, computed faster with the
  // factorisation.
  mpz_class encrypt(const mpz_class& m, BigRandom& rng) const;

 private:
  mpz_class p_, q_, n_, n_squared_;
  mpz_class p_squared_, q_squared_;
  mpz_class lambda_, mu_;
  mpz_class hp_, hq_;
  mpz_class q_inv_mod_p_;
  mpz_class p2_inv_mod_q2_;
  mpz_class n_mod_phi_p2_, n_mod_phi_q2_;
};

struct PaillierKeypair {
  PaillierPublicKey public_key;
  PaillierPrivateKey private_key;

  // Builds a keypair from two distinct primes with gcd(pq, (p-1)(q-1)) = 1.
  static PaillierKeypair from_primes(const mpz_class& p, const mpz_class& q);
};

// Generates a keypair whose modulus n has exactly `bit_length` bits.
// bit_length >= 16; prime sampling retries internally.
PaillierKeypair paillier_keygen(std::size_t bit_length, std::uint64_t seed);

}  // namespace pprl

#endif  // PPRL_SECURESUM_PAILLIER_H_
