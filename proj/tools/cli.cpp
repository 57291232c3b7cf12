#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>

#include "hilbx/cipher.hpp"
#include "hilbx/classical.hpp"
#include "hilbx/envelope.hpp"
#include "hilbx/errors.hpp"
#include "hilbx/special.hpp"
#include "hilbx/stability.hpp"

namespace hilbx::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::mt19937_64 make_rng(const std::optional<std::uint64_t>& seed) {
  if (seed) return std::mt19937_64(*seed);
  std::random_device rd;
  std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
  return std::mt19937_64(seq);
}

std::vector<Rational> parse_csv(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw FormatError("expected a comma-separated list of rationals");
  return out;
}

special::SpecialSpec make_spec(const std::string& family, std::optional<std::size_t> n, const std::string& xs,
                               const std::string& ys) {
  using special::SpecialSpec;
  if (family == "hilbert") {
    if (!n) throw DomainError("--n is required for hilbert");
    return SpecialSpec::hilbert(*n);
  }
  if (family == "cauchy") return SpecialSpec::cauchy(parse_csv(xs), parse_csv(ys));
  if (family == "vandermonde") return SpecialSpec::vandermonde(parse_csv(xs));
  if (!n) throw DomainError("--n is required for comb");
  const auto x = parse_csv(xs);
  const auto y = parse_csv(ys);
  if (x.size() != 1 || y.size() != 1) throw DomainError("comb takes a single --x and a single --y");
  return SpecialSpec::combinatorial(*n, x[0], y[0]);
}

Bytes as_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert-matrix block cipher toolkit (pedagogical; not secure)", "hilbx"};
  app.require_subcommand(1);

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Create a session key file");
  std::size_t kg_m = 0;
  std::optional<std::size_t> kg_n;
  std::optional<std::uint64_t> seed;
  std::string out_path, in_path, key_path;
  keygen->add_option("--m", kg_m, "Plaintext block size in bytes")->required();
  keygen->add_option("--n", kg_n, "Explicit prime Hilbert order");
  keygen->add_option("--seed", seed, "Deterministic RNG seed");
  keygen->add_option("--out", out_path, "Key file to write")->required();

  auto* encrypt = app.add_subcommand("encrypt", "CBC-encrypt a file");
  encrypt->add_option("--key", key_path)->required();
  encrypt->add_option("--in", in_path)->required();
  encrypt->add_option("--out", out_path)->required();

  auto* decrypt = app.add_subcommand("decrypt", "CBC-decrypt a file");
  decrypt->add_option("--key", key_path)->required();
  decrypt->add_option("--in", in_path)->required();
  decrypt->add_option("--out", out_path)->required();

  auto* matrix = app.add_subcommand("matrix", "Special-matrix queries");
  matrix->require_subcommand(1);
  std::string family;
  std::optional<std::size_t> mat_n;
  std::string xs, ys;
  std::string matrix_op;
  for (const char* op : {"det", "inv", "build"}) {
    auto* sub = matrix->add_subcommand(op);
    sub->add_option("--family", family)->required()->check(CLI::IsMember({"hilbert", "cauchy", "vandermonde", "comb"}));
    sub->add_option("--n", mat_n);
    sub->add_option("--x", xs, "Comma-separated rationals");
    sub->add_option("--y", ys, "Comma-separated rationals");
    sub->callback([&matrix_op, op] { matrix_op = op; });
  }

  auto* attack = app.add_subcommand("attack", "Known-plaintext attacks");
  attack->require_subcommand(1);
  auto* attack_hill = attack->add_subcommand("hill", "Recover a Hill key from known pairs");
  std::size_t hill_m = 0;
  std::string pairs_path;
  attack_hill->add_option("--m", hill_m)->required();
  attack_hill->add_option("--pairs", pairs_path)->required();

  auto* stability = app.add_subcommand("stability", "Float vs exact Hilbert inversion");
  std::size_t max_n = 0;
  bool csv = false;
  stability->add_option("--max-n", max_n)->required();
  stability->add_flag("--csv", csv);

  auto* envelope = app.add_subcommand("envelope", "Toy public-key envelope for session keys");
  envelope->require_subcommand(1);
  auto* env_keygen = envelope->add_subcommand("keygen");
  std::size_t bits = 256;
  std::string pub_path, priv_path;
  env_keygen->add_option("--bits", bits);
  env_keygen->add_option("--seed", seed);
  env_keygen->add_option("--pub", pub_path)->required();
  env_keygen->add_option("--priv", priv_path)->required();
  auto* env_wrap = envelope->add_subcommand("wrap");
  env_wrap->add_option("--pub", pub_path)->required();
  env_wrap->add_option("--key", key_path)->required();
  env_wrap->add_option("--out", out_path)->required();
  auto* env_unwrap = envelope->add_subcommand("unwrap");
  env_unwrap->add_option("--priv", priv_path)->required();
  env_unwrap->add_option("--in", in_path)->required();
  env_unwrap->add_option("--out", out_path)->required();

  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  auto* ecb_vs_cbc = demo->add_subcommand("ecb-vs-cbc", "Repeat detection without and with chaining");
  std::string block_hex;
  std::size_t repeat = 8;
  ecb_vs_cbc->add_option("--key", key_path)->required();
  ecb_vs_cbc->add_option("--block", block_hex, "One plaintext block as lowercase hex")->required();
  ecb_vs_cbc->add_option("--repeat", repeat, "How many copies of the block");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (keygen->parsed()) {
      auto rng = make_rng(seed);
      write_file(out_path, format_key(hilbx::keygen(kg_m, kg_n, rng)));
    } else if (encrypt->parsed()) {
      const auto key = parse_key(read_file(key_path));
      write_file(out_path, format_ciphertext(cbc_encrypt(key, as_bytes(read_file(in_path)))));
    } else if (decrypt->parsed()) {
      const auto key = parse_key(read_file(key_path));
      const auto plain = cbc_decrypt(key, parse_ciphertext(read_file(in_path)));
      write_file(out_path, std::string_view(reinterpret_cast<const char*>(plain.data()), plain.size()));
    } else if (matrix->parsed()) {
      const auto spec = make_spec(family, mat_n, xs, ys);
      if (matrix_op == "det")
        out << special::closed_det(spec).str() << "\n";
      else if (matrix_op == "inv")
        out << special::closed_inv(spec).pretty() << "\n";
      else
        out << special::build(spec).pretty() << "\n";
    } else if (attack_hill->parsed()) {
      const auto pairs = classical::parse_pairs(read_file(pairs_path), hill_m);
      const auto k = classical::hill_kpa_attack(pairs, hill_m);
      out << "[";
      for (std::size_t r = 0; r < k.size(); ++r) {
        out << (r ? ",[" : "[");
        for (std::size_t c = 0; c < k.size(); ++c) out << (c ? "," : "") << k.at(r, c);
        out << "]";
      }
      out << "]\n";
    } else if (stability->parsed()) {
      const auto rep = stability::stability_report(max_n);
      out << (csv ? stability::format_csv(rep) : stability::format_table(rep));
    } else if (env_keygen->parsed()) {
      auto rng = make_rng(seed);
      const auto kp = envelope::toy_keygen(bits, rng);
      write_file(pub_path, envelope::format_public(kp.public_key()));
      write_file(priv_path, envelope::format_keypair(kp));
    } else if (env_wrap->parsed()) {
      const auto pub = envelope::parse_public(read_file(pub_path));
      const auto key = parse_key(read_file(key_path));
      write_file(out_path, envelope::format_envelope(envelope::wrap_session(pub, key)));
    } else if (env_unwrap->parsed()) {
      const auto kp = envelope::parse_keypair(read_file(priv_path));
      const auto chunks = envelope::parse_envelope(read_file(in_path));
      write_file(out_path, format_key(envelope::unwrap_session(kp.private_key(), chunks)));
    } else if (ecb_vs_cbc->parsed()) {
      const auto key = parse_key(read_file(key_path));
      const Bytes block = from_hex(block_hex);
      if (block.size() != key.m)
        throw DomainError("--block has " + std::to_string(block.size()) + " bytes, key block size is " + std::to_string(key.m));
      Bytes data;
      for (std::size_t i = 0; i < repeat; ++i) data.insert(data.end(), block.begin(), block.end());
      const auto single = ecb_encrypt(key, data);
      const auto chained = cbc_encrypt(key, data);
      const auto single_hits = classical::find_repeats<CipherBlock>(single.blocks);
      const auto chained_hits = classical::find_repeats<CipherBlock>(chained.blocks);
      out << "single-block: " << single.blocks.size() << " blocks, " << single_hits.size() << " colliding pairs\n";
      out << "cbc: " << chained.blocks.size() << " blocks, " << chained_hits.size() << " colliding pairs\n";
    }
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return 1;
  } catch (const PaddingError& e) {
    err << "padding error: " << e.what() << "\n";
    return 1;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hilbx::cli
