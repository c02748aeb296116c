#pragma once

// Command-line front end. run_command() is the whole tool minus main(), so it
// can be driven from tests.
//
// Exit status: 0 success, 1 usage error, 2 data/format error, 3 desync or
// size-guard error. Diagnostics go to `err` only.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scsprbg/analysis/attacks.hpp"
#include "scsprbg/analysis/bounds.hpp"
#include "scsprbg/analysis/complexity.hpp"
#include "scsprbg/analysis/stats.hpp"
#include "scsprbg/bench.hpp"
#include "scsprbg/cipher.hpp"
#include "scsprbg/errors.hpp"
#include "scsprbg/params_file.hpp"
#include "scsprbg/pipeline.hpp"

namespace scsprbg::cli {

class UsageError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitDesync = 3;

inline constexpr std::size_t kDefaultFrameBytes = std::size_t{1} << 20;

// ---------------------------------------------------------------------------
// helpers

inline std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("write failed: " + path);
}

inline std::vector<std::uint8_t> parse_hex(std::string s) {
  if (s.starts_with("0x") || s.starts_with("0X")) s = s.substr(2);
  if (s.size() % 2 != 0) throw UsageError("hex string must have an even number of digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw UsageError(std::string("invalid hex digit '") + c + "'");
  };
  std::vector<std::uint8_t> out(s.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(s[2 * i]) << 4 | nibble(s[2 * i + 1]));
  }
  return out;
}

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

inline std::uint64_t parse_seed64(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw UsageError("bad seed: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad seed: " + s);
  }
}

// Accepts plain numbers ("1e21", "0.01") and powers of two ("2^70").
inline double parse_number(const std::string& s) {
  try {
    if (auto caret = s.find('^'); caret != std::string::npos) {
      const double base = std::stod(s.substr(0, caret));
      const double exp = std::stod(s.substr(caret + 1));
      return std::pow(base, exp);
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("bad number: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad number: " + s);
  }
}

// "5.87e+113" from a base-10 logarithm.
inline std::string sci_from_log10(double lg, int digits = 3) {
  if (!std::isfinite(lg)) return lg > 0 ? "inf" : "0";
  double e = std::floor(lg);
  double mant = std::pow(10.0, lg - e);
  const double round_to = std::pow(10.0, digits - 1);
  mant = std::round(mant * round_to) / round_to;
  if (mant >= 10.0) {
    mant /= 10.0;
    e += 1;
  }
  std::ostringstream os;
  os << std::setprecision(digits) << mant << "e" << (e >= 0 ? "+" : "") << static_cast<long long>(e);
  return os.str();
}

inline std::string fmt_double(double v, int prec = 10) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

struct SeedOptions {
  std::string hex;
  std::string file;

  std::vector<std::uint8_t> bytes() const {
    if (!hex.empty() && !file.empty()) throw UsageError("use only one of --seed-hex / --seed-file");
    if (!hex.empty()) return parse_hex(hex);
    if (!file.empty()) return read_file(file);
    throw UsageError("a seed is required (--seed-hex or --seed-file)");
  }
};

// First file: generator (quad or rsaprg). Further files: pick stages.
inline Pipeline load_pipeline(const std::vector<std::string>& paths,
                              std::span<const std::uint8_t> seed) {
  if (paths.empty()) throw UsageError("at least one --params file is required");
  ParamsFile first = parse_params(read_file(paths.front()));
  std::optional<Generator> gen;
  if (auto* q = std::get_if<QuadRecord>(&first)) {
    const std::size_t n = q->system.n();
    if (seed.size() * 8 < n) {
      throw FormatError("seed has " + std::to_string(seed.size() * 8) + " bits, QUAD state needs " +
                        std::to_string(n));
    }
    gen.emplace(std::make_shared<const QuadSystem>(std::move(q->system)),
                BitVec::from_bytes(seed, n));
  } else if (auto* r = std::get_if<RsaPrgParams>(&first)) {
    if (seed.empty()) throw FormatError("empty seed");
    mpz_class x0;
    mpz_import(x0.get_mpz_t(), seed.size(), 1, 1, 1, 0, seed.data());
    x0 %= r->modulus();
    gen.emplace(std::make_shared<const RsaPrgParams>(std::move(*r)), x0);
  } else {
    throw FormatError(paths.front() + ": first --params file must be a quad or rsaprg generator");
  }

  std::vector<PickMatrix> stages;
  for (std::size_t i = 1; i < paths.size(); ++i) {
    ParamsFile p = parse_params(read_file(paths[i]));
    auto* pm = std::get_if<PickMatrix>(&p);
    if (pm == nullptr) throw FormatError(paths[i] + ": expander stages must be pick files");
    stages.push_back(std::move(*pm));
  }
  if (stages.empty()) return Pipeline(std::move(*gen));
  return Pipeline(std::move(*gen), PickChain(std::move(stages)));
}

inline void emit(std::ostream& out, bool json, const nlohmann::ordered_json& j) {
  if (json) {
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      for (const auto& [k2, v2] : v.items()) {
        out << k << "." << k2 << "=" << (v2.is_string() ? v2.get<std::string>() : v2.dump()) << "\n";
      }
    } else {
      out << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

inline nlohmann::ordered_json report_json(const analysis::ComplexityReport& rep) {
  nlohmann::ordered_json j;
  j["k"] = rep.params.k;
  j["m"] = rep.params.m;
  j["input_bits"] = rep.params.input_bits();
  j["output_bits"] = rep.params.lrows();
  j["R"] = std::to_string(rep.r.num) + "/" + std::to_string(rep.r.den);
  j["R_value"] = rep.r.value();
  j["xor_per_bit"] = rep.xor_per_bit;
  j["matrix_bytes"] = rep.matrix_bytes;
  j["cost_cycles_per_bit"] = rep.cost_cycles_per_bit;
  j["mq"] = {{"variables", rep.counts.nvars},
             {"linear", rep.counts.linear},
             {"quadratic_minimal", rep.counts.quadratic_minimal},
             {"quadratic_full", rep.counts.quadratic_full},
             {"free_variables", rep.free_vars}};
  const auto& s1 = rep.strategy1;
  j["strategy1"] = {{"free_blocks", s1.free_blocks},
                    {"log2_trials", s1.log2_trials},
                    {"cycles_per_trial", s1.per_trial_cycles},
                    {"log10_cycles", s1.log10_cycles},
                    {"cycles", sci_from_log10(s1.log10_cycles)}};
  const auto& s2 = rep.strategy2;
  j["strategy2"] = {{"xl_degree", s2.degree},
                    {"log10_ops", s2.log10_ops},
                    {"ops", sci_from_log10(s2.log10_ops)}};
  const auto& s3 = rep.strategy3;
  j["strategy3"] = {{"equations", s3.equations},
                    {"eq_var_ratio", s3.eq_var_ratio},
                    {"bardet_estimate", s3.bardet_estimate},
                    {"degree", s3.degree},
                    {"log10_ops", s3.log10_ops},
                    {"ops", sci_from_log10(s3.log10_ops)},
                    {"series_degree", s3.series_degree},
                    {"series_log10_ops", s3.series_log10_ops},
                    {"series_ops", sci_from_log10(s3.series_log10_ops)}};
  const auto& s4 = rep.strategy4;
  j["strategy4"] = {{"t", s4.t},
                    {"log10_success", s4.log10_success},
                    {"success", sci_from_log10(s4.log10_success)},
                    {"log10_expected_cycles", s4.log10_expected_cycles},
                    {"expected_cycles", sci_from_log10(s4.log10_expected_cycles)},
                    {"literal_success", sci_from_log10(s4.log10_literal_success)},
                    {"literal_expected_cycles", sci_from_log10(s4.log10_literal_expected_cycles)}};
  return j;
}

inline nlohmann::ordered_json stats_json(const analysis::StatReport& r) {
  nlohmann::ordered_json j;
  j["bits"] = r.nbits;
  j["alpha"] = r.alpha;
  j["monobit"] = {{"z", r.monobit_z}, {"p", r.monobit_p}, {"pass", r.monobit_pass()}};
  j["runs"] = {{"runs", r.runs},
               {"z", r.runs_z},
               {"p", r.runs_p},
               {"prerequisite", r.runs_prerequisite},
               {"pass", r.runs_pass()}};
  j["block_frequency"] = {{"block_size", r.block_size},
                          {"chi2", r.block_chi2},
                          {"p", r.block_p},
                          {"pass", r.block_pass()}};
  j["pass"] = r.pass();
  return j;
}

inline nlohmann::ordered_json bench_json(const BenchReport& r) {
  auto sample = [&](const RateSample& s) {
    return nlohmann::ordered_json{{"bits", s.bits},
                                  {"seconds", s.seconds},
                                  {"mbit_per_s", s.mbit_per_s()},
                                  {"cycles_per_bit", s.cycles_per_bit(r.cpu_ghz)}};
  };
  nlohmann::ordered_json j;
  j["cpu_ghz"] = r.cpu_ghz;
  j["bytes_produced"] = r.bytes_produced();
  j["pipeline"] = sample(r.pipeline);
  j["generator"] = sample(r.generator);
  j["expander"] = sample(r.expander);
  j["speedup_vs_generator"] = r.speedup_vs_generator();
  j["generator_share"] = r.generator_share();
  j["prefix_digest"] = to_hex(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(&r.prefix_digest), sizeof r.prefix_digest));
  return j;
}

// ---------------------------------------------------------------------------
// run_command

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Keystream generation, encryption and analysis for pick-expanded generators",
               "scsprbg"};
  app.require_subcommand(1);

  // gen-params
  auto* gen = app.add_subcommand("gen-params", "write a parameter file");
  std::string gp_kind;
  std::uint32_t gp_k = 6, gp_m = 128, gp_n = 160, gp_kq = 2, gp_e = 3, gp_r = 0;
  std::string gp_seed = "0", gp_mod, gp_out;
  gen->add_option("--kind", gp_kind, "pick | quad | rsaprg")
      ->required()
      ->check(CLI::IsMember({"pick", "quad", "rsaprg"}));
  gen->add_option("--k", gp_k, "pick: bits per segment");
  gen->add_option("--m", gp_m, "pick: number of blocks");
  gen->add_option("--n", gp_n, "quad: state bits");
  gen->add_option("--kq", gp_kq, "quad: expansion (equations = kq*n)");
  gen->add_option("--seed", gp_seed, "64-bit seed for public parameters (decimal or 0x hex)");
  gen->add_option("--modulus-hex", gp_mod, "rsaprg: modulus, big-endian hex");
  gen->add_option("--e", gp_e, "rsaprg: exponent");
  gen->add_option("--r", gp_r, "rsaprg: output bits per iteration");
  gen->add_option("--out", gp_out, "output file")->required();

  // keystream
  auto* ks = app.add_subcommand("keystream", "write raw keystream bytes (LSB-first)");
  std::vector<std::string> ks_params;
  SeedOptions ks_seed;
  std::uint64_t ks_nbits = 0;
  std::string ks_out;
  ks->add_option("--params", ks_params, "generator file, then optional pick stage files")
      ->required();
  ks->add_option("--seed-hex", ks_seed.hex);
  ks->add_option("--seed-file", ks_seed.file);
  ks->add_option("--nbits", ks_nbits)->required();
  ks->add_option("--out", ks_out)->required();

  // encrypt / decrypt
  std::vector<std::string> ed_params;
  SeedOptions ed_seed;
  std::string ed_in, ed_out;
  std::size_t ed_frame = kDefaultFrameBytes;
  auto add_ed = [&](CLI::App* sc) {
    sc->add_option("--params", ed_params)->required();
    sc->add_option("--seed-hex", ed_seed.hex);
    sc->add_option("--seed-file", ed_seed.file);
    sc->add_option("--in", ed_in)->required();
    sc->add_option("--out", ed_out)->required();
  };
  auto* enc = app.add_subcommand("encrypt", "encrypt a file into SCSC frames");
  add_ed(enc);
  enc->add_option("--frame-bytes", ed_frame, "maximum payload per frame")
      ->check(CLI::PositiveNumber);
  auto* dec = app.add_subcommand("decrypt", "decrypt SCSC frames");
  add_ed(dec);

  // bench
  auto* bench = app.add_subcommand("bench", "measure keystream throughput");
  std::vector<std::string> b_params;
  SeedOptions b_seed;
  double b_seconds = 1.0, b_ghz = 1.0;
  bool b_json = false;
  bench->add_option("--params", b_params)->required();
  bench->add_option("--seed-hex", b_seed.hex);
  bench->add_option("--seed-file", b_seed.file);
  bench->add_option("--seconds", b_seconds, "seconds per measured component")
      ->check(CLI::Range(1.0, 3600.0));
  bench->add_option("--cpu-ghz", b_ghz, "clock used to convert time to cycles/bit")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--json", b_json);

  // analyze
  auto* an = app.add_subcommand("analyze", "pick cost model and attack complexities");
  std::uint32_t a_k = 6, a_m = 128;
  analysis::CostModel a_cm;
  analysis::AttackOptions a_opts;
  bool a_json = false;
  an->add_option("--k", a_k);
  an->add_option("--m", a_m);
  an->add_option("--d", a_cm.d, "word width");
  an->add_option("--t1", a_cm.t1, "generator cycles/bit");
  an->add_option("--t2", a_cm.t2, "expander cycles/bit");
  an->add_option("--omega", a_cm.omega, "linear algebra exponent");
  an->add_option("--verify-cost", a_cm.verify_cost, "cycles per probabilistic verification");
  an->add_option("--t", a_opts.fixed_per_block, "variables fixed per block (strategy 4)");
  an->add_option("--xl-degree", a_opts.xl_degree, "XL degree (strategy 2)");
  an->add_flag("--json", a_json);

  // attack
  auto* at = app.add_subcommand("attack", "toy-scale inversion of pick");
  std::string at_mode = "brute", at_params, at_output, at_input;
  std::uint64_t at_trials = 100000, at_rng = 1;
  std::uint32_t at_t = 1;
  bool at_json = false;
  at->add_option("--mode", at_mode)->check(CLI::IsMember({"brute", "prob"}));
  at->add_option("--params", at_params, "pick parameter file")->required();
  auto* at_out_opt = at->add_option("--output-hex", at_output, "target output, LSB-first bytes");
  at->add_option("--input-hex", at_input, "derive the target output from this input")
      ->excludes(at_out_opt);
  at->add_option("--trials", at_trials);
  at->add_option("--rng-seed", at_rng);
  at->add_option("--t", at_t, "variables fixed to zero per block");
  at->add_flag("--json", at_json);

  // stats
  auto* st = app.add_subcommand("stats", "frequency / runs / block-frequency tests");
  std::string st_in;
  bool st_json = false;
  st->add_option("--in", st_in)->required();
  st->add_flag("--json", st_json);

  // bounds
  auto* bd = app.add_subcommand("bounds", "security-bound calculators");
  bool bd_rsa = false, bd_quad = false, bd_json = false;
  std::string bd_n, bd_e = "3", bd_r = "1024", bd_l = "2^32", bd_t = "0", bd_delta = "0.01",
                    bd_kq = "2", bd_lambda = "1", bd_ts = "0", bd_eps = "0.01",
                    bd_base = "2";
  auto* o_rsa = bd->add_flag("--rsaprg", bd_rsa);
  auto* o_quad = bd->add_flag("--quad", bd_quad);
  o_rsa->excludes(o_quad);
  bd->add_option("--n", bd_n)->required();
  bd->add_option("--e", bd_e);
  bd->add_option("--r", bd_r);
  bd->add_option("--l", bd_l);
  bd->add_option("--T", bd_t, "distinguisher time (accepts 2^x)");
  bd->add_option("--delta", bd_delta);
  bd->add_option("--kq", bd_kq);
  bd->add_option("--lambda", bd_lambda);
  bd->add_option("--ts", bd_ts);
  bd->add_option("--eps", bd_eps);
  bd->add_option("--log-base", bd_base)->check(CLI::IsMember({"2", "e"}));
  bd->add_flag("--json", bd_json);

  std::vector<const char*> argv;
  argv.push_back("scsprbg");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gen) {
      ParamsFile pf = [&]() -> ParamsFile {
        const Seed64 seed{parse_seed64(gp_seed)};
        if (gp_kind == "pick") return pick_matrix_from_seed(PickParams{gp_k, gp_m}, seed);
        if (gp_kind == "quad") return QuadRecord{QuadSystem::from_seed(gp_n, gp_kq, seed), seed};
        if (gp_mod.empty()) throw UsageError("rsaprg needs --modulus-hex");
        const auto mb = parse_hex(gp_mod);
        mpz_class n;
        mpz_import(n.get_mpz_t(), mb.size(), 1, 1, 1, 0, mb.data());
        if (gp_r == 0) throw UsageError("rsaprg needs --r");
        return RsaPrgParams(n, gp_e, gp_r);
      }();
      write_file(gp_out, serialize_params(pf));
      return kExitOk;
    }

    if (*ks) {
      Pipeline p = load_pipeline(ks_params, ks_seed.bytes());
      KeystreamSource src(std::move(p));
      std::vector<std::uint8_t> bytes;
      bytes.reserve(bytes_for_bits(ks_nbits));
      std::uint64_t left = ks_nbits;
      while (left > 0) {
        const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(left, 1U << 22));
        const auto part = src.take(n).bits.to_bytes();
        bytes.insert(bytes.end(), part.begin(), part.end());
        left -= n;
      }
      write_file(ks_out, bytes);
      return kExitOk;
    }

    if (*enc) {
      const auto plain = read_file(ed_in);
      KeystreamSource src(load_pipeline(ed_params, ed_seed.bytes()));
      std::vector<std::uint8_t> outbytes;
      std::size_t pos = 0;
      do {
        const std::size_t n = std::min(ed_frame, plain.size() - pos);
        append_frame(outbytes, seal(std::span(plain).subspan(pos, n), src));
        pos += n;
      } while (pos < plain.size());
      write_file(ed_out, outbytes);
      return kExitOk;
    }

    if (*dec) {
      const auto frames = decode_frames(read_file(ed_in));
      KeystreamSource src(load_pipeline(ed_params, ed_seed.bytes()));
      std::vector<std::uint8_t> plain;
      for (const auto& f : frames) {
        const auto part = open(f, src);
        plain.insert(plain.end(), part.begin(), part.end());
      }
      write_file(ed_out, plain);
      return kExitOk;
    }

    if (*bench) {
      const Pipeline p = load_pipeline(b_params, b_seed.bytes());
      emit(out, b_json, bench_json(bench_pipeline(p, b_seconds, b_ghz)));
      return kExitOk;
    }

    if (*an) {
      emit(out, a_json, report_json(analysis::complexity_report(PickParams{a_k, a_m}, a_cm, a_opts)));
      return kExitOk;
    }

    if (*at) {
      ParamsFile pf = parse_params(read_file(at_params));
      const auto* pm = std::get_if<PickMatrix>(&pf);
      if (pm == nullptr) throw FormatError(at_params + ": not a pick parameter file");
      const PickParams& pp = pm->params();
      BitVec target;
      if (!at_input.empty()) {
        target = pick_expand(*pm, BitVec::from_bytes(parse_hex(at_input), pp.input_bits()));
      } else if (!at_output.empty()) {
        const auto ob = parse_hex(at_output);
        if (ob.size() != bytes_for_bits(pp.lrows())) {
          throw FormatError("--output-hex must be " + std::to_string(bytes_for_bits(pp.lrows())) +
                            " bytes");
        }
        target = BitVec::from_bytes(ob, pp.lrows());
      } else {
        throw UsageError("attack needs --output-hex or --input-hex");
      }
      nlohmann::ordered_json j;
      j["mode"] = at_mode;
      j["output"] = to_hex(target.to_bytes());
      if (at_mode == "brute") {
        const auto pre = analysis::bruteforce_preimages(*pm, target);
        j["preimages"] = pre.size();
        nlohmann::ordered_json list = nlohmann::ordered_json::array();
        for (const auto& x : pre) list.push_back(to_hex(x.to_bytes()));
        if (at_json) {
          j["inputs"] = list;
        } else {
          std::string joined;
          for (const auto& x : list) joined += (joined.empty() ? "" : ",") + x.get<std::string>();
          j["inputs"] = joined;
        }
      } else {
        const auto res = analysis::probabilistic_attack(*pm, target, at_t, at_trials, at_rng);
        j["t"] = at_t;
        j["trials"] = res.trials;
        j["found"] = res.input.has_value();
        if (res.input) j["input"] = to_hex(res.input->to_bytes());
      }
      emit(out, at_json, j);
      return kExitOk;
    }

    if (*st) {
      const auto bytes = read_file(st_in);
      const auto rep = analysis::stat_tests(BitVec::from_bytes(bytes, bytes.size() * 8));
      emit(out, st_json, stats_json(rep));
      return kExitOk;
    }

    if (*bd) {
      if (bd_rsa == bd_quad) throw UsageError("bounds needs exactly one of --rsaprg / --quad");
      const auto base = bd_base == "e" ? analysis::LogBase::kE : analysis::LogBase::kTwo;
      nlohmann::ordered_json j;
      if (bd_rsa) {
        analysis::RsaPrgBoundInput in{parse_number(bd_n), parse_number(bd_e),
                                      parse_number(bd_r), parse_number(bd_l),
                                      parse_number(bd_t), parse_number(bd_delta), base};
        const auto o = analysis::rsaprg_bound(in);
        j["C_S"] = fmt_double(o.c_s);
        j["log10_C_S"] = o.log10_c_s;
        j["T_INV"] = fmt_double(o.t_inv);
        j["log10_T_INV"] = o.log10_t_inv;
        j["eps_INV"] = fmt_double(o.eps_inv, 12);
        j["w"] = o.w;
        j["below_theorem_range"] = o.below_theorem_range;
        if (o.below_theorem_range) err << "warning: the reduction is stated for n >= 512\n";
      } else {
        analysis::QuadBoundInput in{parse_number(bd_n), parse_number(bd_kq),
                                    parse_number(bd_lambda), parse_number(bd_ts),
                                    parse_number(bd_t), parse_number(bd_eps), base};
        const auto o = analysis::quad_bound(in);
        j["L"] = fmt_double(o.keystream_bits);
        j["T_prime"] = fmt_double(o.t_prime);
        j["log10_T_prime"] = o.log10_t_prime;
        j["success_lower_bound"] = fmt_double(o.success_lower_bound, 12);
      }
      emit(out, bd_json, j);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DesyncError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDesync;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDesync;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace scsprbg::cli
