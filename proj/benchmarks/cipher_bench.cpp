#include <benchmark/benchmark.h>

#include <random>

#include "hilbx/cipher.hpp"

namespace {

hilbx::SessionKey key_for(std::size_t n, std::size_t m) {
  std::mt19937_64 rng(1);
  return hilbx::keygen(m, n, rng);
}

hilbx::Bytes data_of(std::size_t len) {
  std::mt19937_64 rng(2);
  hilbx::Bytes b(len);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng());
  return b;
}

void BM_EncryptBlock(benchmark::State& state) {
  const auto key = key_for(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto block = data_of(key.m);
  for (auto _ : state) benchmark::DoNotOptimize(hilbx::encrypt_block(key, block));
}
BENCHMARK(BM_EncryptBlock)->Args({7, 3})->Args({29, 16})->Args({97, 64})->Unit(benchmark::kMicrosecond);

void BM_DecryptBlock(benchmark::State& state) {
  const auto key = key_for(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto c = hilbx::encrypt_block(key, data_of(key.m));
  for (auto _ : state) benchmark::DoNotOptimize(hilbx::decrypt_block(key, c));
}
BENCHMARK(BM_DecryptBlock)->Args({7, 3})->Args({29, 16})->Args({97, 64})->Unit(benchmark::kMicrosecond);

void BM_ChainBytes(benchmark::State& state) {
  const auto key = key_for(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto c = hilbx::encrypt_block(key, data_of(key.m));
  for (auto _ : state) benchmark::DoNotOptimize(hilbx::chain_bytes(c, key.m));
}
BENCHMARK(BM_ChainBytes)->Args({7, 3})->Args({29, 16})->Args({97, 64})->Unit(benchmark::kMicrosecond);

void BM_CbcRoundTrip4K(benchmark::State& state) {
  const auto key = key_for(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto data = data_of(4096);
  for (auto _ : state) benchmark::DoNotOptimize(hilbx::cbc_decrypt(key, hilbx::cbc_encrypt(key, data)));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * 4096);
}
BENCHMARK(BM_CbcRoundTrip4K)->Args({7, 3})->Args({29, 16})->Args({97, 64})->Unit(benchmark::kMillisecond);

}  // namespace
