/*
 * Copyright 2026 The kyberlab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// kyberlab command-line front end.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kyberlab/attack.h"
#include "kyberlab/errors.h"
#include "kyberlab/experiment.h"
#include "kyberlab/its_channel.h"
#include "kyberlab/kem.h"
#include "kyberlab/params.h"
#include "kyberlab/solver.h"
#include "kyberlab/symmetric.h"

namespace {

using namespace kyberlab;

Bytes ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void WriteFile(const std::string& path, ByteSpan data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("failed writing " + path);
}

void WriteText(const std::string& path, const std::string& text) {
  WriteFile(path, ByteSpan(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Options shared by several subcommands. Strings are parsed after CLI11 so
// that library errors keep their own types and messages.
struct Common {
  std::string variant = "512";
  std::optional<std::uint64_t> seed;
  std::string ineq;
  int repeats = 5;
  int workers = 1;
  std::string out;
  std::size_t payload_len = kDefaultPayloadLen;
  std::string solver = "auto";
  std::optional<int> max_iterations;
  std::optional<double> damping;
};

// Random unless --seed was given; a given seed is expanded per purpose.
Seed SeedFor(const Common& c, std::string_view purpose) {
  return c.seed ? DeriveSeed(purpose, {*c.seed}) : RandomSeed();
}

// Starts from ExperimentSolverConfig; explicit flags override it.
SolverConfig SolverFrom(const Common& c, const KyberParams& params) {
  SolverConfig cfg = ExperimentSolverConfig(params);
  if (c.solver == "exact") {
    cfg.mode = SolverMode::kExact;
  } else if (c.solver == "normal") {
    cfg.mode = SolverMode::kNormalApprox;
  }
  if (c.max_iterations) cfg.max_iterations = *c.max_iterations;
  if (c.damping) cfg.damping = *c.damping;
  cfg.workers = c.workers;
  return cfg;
}

int Keygen(const Common& c) {
  const auto params = KyberParams::For(ParseVariant(c.variant));
  const auto kp = KemKeyGen(params, SeedFor(c, "kyberlab.cli.keygen"));
  const std::string prefix = c.out.empty() ? "kyber" : c.out;
  WriteFile(prefix + ".pk", SerializePublicKey(kp.pk, params));
  WriteFile(prefix + ".sk", SerializeKemSecretKey(kp.sk, params));
  std::cout << "pk " << prefix << ".pk sha3-256 " << ToHex(Sha3_256(SerializePublicKey(kp.pk, params))) << "\n"
            << "sk " << prefix << ".sk\n";
  return 0;
}

int EncapsCmd(const Common& c, const std::string& pk_path) {
  const auto params = KyberParams::For(ParseVariant(c.variant));
  const auto pk = DeserializePublicKey(ReadFile(pk_path), params);
  const auto enc = Encaps(pk, SeedFor(c, "kyberlab.cli.encaps"), params);
  const std::string path = c.out.empty() ? "kyber.ct" : c.out;
  WriteFile(path, SerializeCiphertext(enc.ct, params));
  std::cout << "ct " << path << "\nkey " << ToHex(enc.key) << "\n";
  return 0;
}

int DecapsCmd(const Common& c, const std::string& sk_path, const std::string& ct_path) {
  const auto params = KyberParams::For(ParseVariant(c.variant));
  const auto sk = DeserializeKemSecretKey(ReadFile(sk_path), params);
  const auto ct = DeserializeCiphertext(ReadFile(ct_path), params);
  std::cout << "key " << ToHex(Decaps(sk, ct, params)) << "\n";
  return 0;
}

// One simulated attack: keygen from the seed, collect, recover, report.
int AttackCmd(const Common& c) {
  const auto params = KyberParams::For(ParseVariant(c.variant));
  const auto counts = ParseCounts(c.ineq.empty() ? "7000" : c.ineq);
  if (counts.size() != 1) throw ConfigurationError("attack takes a single --ineq count; use sweep for grids");
  const std::uint64_t seed = c.seed.value_or(1);
  const auto kp = KemKeyGen(params, DeriveSeed("kyberlab.experiment.keygen", {seed}));
  const auto truth = TrueUnknowns(kp);
  CollectOptions options;
  options.workers = c.workers;
  const auto transcript = CollectInequalities(kp, counts[0], seed, params, options);
  const auto ineqs = transcript.Inequalities();
  if (!c.out.empty()) {
    std::ostringstream text;
    WriteInequalities(text, ineqs);
    WriteText(c.out, text.str());
  }
  const SolverConfig cfg = SolverFrom(c, params);
  const auto out = RecoverAndValidate(ineqs, kp.pk, params, cfg, std::span<const int>(truth));
  std::cout << RecoveryReportJson(out.result, out.validated) << "\n";
  return out.validated ? 0 : 2;
}

int SweepCmd(const Common& c) {
  SweepConfig cfg;
  cfg.variant = ParseVariant(c.variant);
  cfg.counts = ParseCounts(c.ineq.empty() ? "5000:8000:1000" : c.ineq);
  cfg.repeats = c.repeats;
  cfg.master_seed = c.seed.value_or(1);
  cfg.workers = c.workers;
  cfg.out_path = c.out.empty() ? "sweep.csv" : c.out;
  cfg.solver = SolverFrom(c, KyberParams::For(cfg.variant));  // RunSweep runs each solve on one thread
  const auto rows = RunSweep(cfg);
  WriteSummaryCsv(std::cout, Summarize(rows));
  std::cerr << "wrote " << cfg.out_path << " and " << SummaryPath(cfg.out_path) << "\n";
  return 0;
}

SecurityLevel LevelFor(Variant v) {
  for (auto level : {SecurityLevel::kLow, SecurityLevel::kModerate, SecurityLevel::kHigh}) {
    if (VariantForLevel(level) == v) return level;
  }
  throw ConfigurationError("variant " + std::string(VariantName(v)) + " has no ITS security level");
}

int SendCmd(const Common& c, const std::string& pk_path, const std::string& msg_path) {
  const Variant v = ParseVariant(c.variant);
  const auto params = KyberParams::For(v);
  const auto pk = DeserializePublicKey(ReadFile(pk_path), params);
  const auto raw = ReadFile(msg_path);
  const auto msg = DeserializeBsm(std::string(raw.begin(), raw.end()));
  const auto sent = SecureSend(pk, LevelFor(v), msg, SeedFor(c, "kyberlab.cli.send"), c.payload_len);
  const std::string path = c.out.empty() ? "envelope.bin" : c.out;
  WriteFile(path, SerializeEnvelope(sent.envelope));
  std::cout << "envelope " << path << " level " << SecurityLevelName(sent.envelope.level) << "\n";
  return 0;
}

int RecvCmd(const Common& c, const std::string& sk_path, const std::string& env_path) {
  const auto env = DeserializeEnvelope(ReadFile(env_path));
  const auto params = KyberParams::For(VariantForLevel(env.level));
  const auto sk = DeserializeKemSecretKey(ReadFile(sk_path), params);
  const std::string text = SerializeBsm(SecureReceive(sk, env));
  if (c.out.empty()) {
    std::cout << text;
  } else {
    WriteText(c.out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kyberlab: Kyber KEM, fault-attack simulation and ITS channel"};
  app.require_subcommand(1);
  Common c;
  std::string pk, sk, ct, msg, env;

  auto add_variant = [&](CLI::App* sub) {
    sub->add_option("--variant", c.variant, "Parameter set: 512, 768, 1024 or baby")
        ->check(CLI::IsMember({"512", "768", "1024", "baby"}))
        ->capture_default_str();
  };
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", c.seed, "Deterministic seed (default: random)"); };
  auto add_out = [&](CLI::App* sub, const std::string& what) { sub->add_option("--out", c.out, what); };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--solver", c.solver, "Recovery mode: auto, exact or normal")
        ->check(CLI::IsMember({"auto", "exact", "normal"}))
        ->capture_default_str();
    sub->add_option("--max-iter", c.max_iterations, "Belief-propagation sweep limit (default: 80)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--damping", c.damping, "Weight kept from the previous message, in [0, 1) (default: 0.5)")
        ->check(CLI::Range(0.0, 0.999999));
  };

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair (<out>.pk, <out>.sk)");
  add_variant(keygen);
  add_seed(keygen);
  add_out(keygen, "Output prefix (default: kyber)");

  auto* encaps = app.add_subcommand("encaps", "Encapsulate to a public key");
  add_variant(encaps);
  add_seed(encaps);
  encaps->add_option("--pk", pk, "Public key file")->required();
  add_out(encaps, "Ciphertext file (default: kyber.ct)");

  auto* decaps = app.add_subcommand("decaps", "Decapsulate a ciphertext");
  add_variant(decaps);
  decaps->add_option("--sk", sk, "Secret key file")->required();
  decaps->add_option("--ct", ct, "Ciphertext file")->required();

  auto* attack = app.add_subcommand("attack", "Run one simulated fault attack and recovery");
  add_variant(attack);
  add_seed(attack);
  attack->add_option("--ineq", c.ineq, "Inequality count (default: 7000)");
  add_out(attack, "Write the collected inequalities to this file");
  add_solver(attack);

  auto* sweep = app.add_subcommand("sweep", "Attack sweep over inequality counts, CSV output");
  add_variant(sweep);
  add_seed(sweep);
  sweep->add_option("--ineq", c.ineq, "Counts: list (a,b,c) or range start:stop:step (default: 5000:8000:1000)");
  sweep->add_option("--repeats", c.repeats, "Trials per count")->check(CLI::PositiveNumber)->capture_default_str();
  add_out(sweep, "CSV path (default: sweep.csv); the summary goes next to it");
  add_solver(sweep);

  auto* send = app.add_subcommand("send", "Encrypt a BSM text file into an envelope");
  add_variant(send);
  add_seed(send);
  send->add_option("--pk", pk, "Receiver public key file")->required();
  send->add_option("--msg", msg, "BSM in name=value form")->required();
  send->add_option("--payload-len", c.payload_len, "Padded payload length in bytes")->capture_default_str();
  add_out(send, "Envelope file (default: envelope.bin)");

  auto* recv = app.add_subcommand("recv", "Verify and decrypt an envelope");
  recv->add_option("--sk", sk, "Secret key file")->required();
  recv->add_option("--in", env, "Envelope file")->required();
  add_out(recv, "Write the BSM here instead of stdout");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*keygen) return Keygen(c);
    if (*encaps) return EncapsCmd(c, pk);
    if (*decaps) return DecapsCmd(c, sk, ct);
    if (*attack) return AttackCmd(c);
    if (*sweep) return SweepCmd(c);
    if (*send) return SendCmd(c, pk, msg);
    if (*recv) return RecvCmd(c, sk, env);
  } catch (const AuthenticationError& e) {
    std::cerr << "authentication failed: " << e.what() << "\n";
    return 3;
  } catch (const kyberlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
