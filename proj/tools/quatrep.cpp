// quatrep: run catalogue checks, factor commutators, print irreducible tables,
// decompose single representations, and manage the report cache.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "quatrep/cache.hpp"
#include "quatrep/certify.hpp"
#include "quatrep/errors.hpp"
#include "quatrep/instances.hpp"
#include "quatrep/tables.hpp"

using namespace quatrep;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kBudget = 3 };

struct Common {
  std::uint32_t q = 2;
  int f = 1;
  unsigned d = 2;
  long ell = 0;
  bool char0 = false;
  std::string base;
  std::uint64_t seed = 1;
  int precision = 12;
  int samples = 100;
  std::size_t limit = 100000;
  std::string format = "json";
  std::string out;

  CheckParams params() const {
    if (char0 && ell != 0) throw DomainError("--char0 and --ell are exclusive");
    CheckParams p;
    p.base = base;
    p.q = q;
    p.d = d;
    p.f = f;
    p.ell = ell;
    p.seed = seed;
    p.precision = precision;
    p.samples = samples;
    p.limit = limit;
    p.validate();
    return p;
  }
};

void add_group_options(CLI::App* c, Common& o) {
  c->add_option("--q", o.q, "residue field size");
  c->add_option("--f", o.f, "level: representations trivial on 1 + P_D^f");
  c->add_option("--d", o.d, "degree of the division algebra");
  c->add_option("--ell", o.ell, "coefficient characteristic (prime)");
  c->add_flag("--char0", o.char0, "characteristic-0 coefficients (default)");
  c->add_option("--base", o.base, "base field: equal (F_q((t))) or padic (Q_p)")->check(CLI::IsMember({"equal", "padic"}));
  c->add_option("--seed", o.seed, "random seed");
  c->add_option("--limit", o.limit, "largest quotient group to enumerate");
}

void add_output_options(CLI::App* c, Common& o) {
  c->add_option("--format", o.format, "json, tsv or human")->check(CLI::IsMember({"json", "tsv", "human"}));
  c->add_option("--out", o.out, "write to this file instead of stdout");
}

// Human output renders the JSON document; there is no separate formatter.
void render_human(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar_array = [](const json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !(v.is_array() && scalar_array(v))) {
        os << pad << k << ":\n";
        render_human(os, v, indent + 1);
      } else {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_structured()) {
        os << pad << "- [" << i << "]\n";
        render_human(os, j[i], indent + 1);
      } else {
        os << pad << "- " << j[i].dump() << '\n';
      }
    }
  } else {
    os << pad << j.dump() << '\n';
  }
}

void emit(const Common& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  f << text;
}

std::string render(const Common& o, const json& j, const std::string& tsv) {
  if (o.format == "tsv") return tsv;
  if (o.format == "human") {
    std::ostringstream os;
    render_human(os, j);
    return os.str();
  }
  return j.dump(2) + "\n";
}

std::string report_tsv(const std::vector<json>& reports) {
  std::ostringstream os;
  os << "id\tcheck\tverdict\tq\tf\tell\tseed\tbody_hash\ttiming_ms\n";
  for (const auto& r : reports) {
    const auto& p = r.at("params");
    os << r.at("id").get<std::string>() << '\t' << r.at("check").get<std::string>() << '\t'
       << r.at("verdict").get<std::string>() << '\t' << p.at("q") << '\t' << p.at("f") << '\t' << p.at("ell") << '\t'
       << p.at("seed") << '\t' << r.at("body_hash").get<std::string>() << '\t' << r.at("timing_ms") << '\n';
  }
  return os.str();
}

std::vector<GaloisField::Elem> parse_digits(const std::string& s, std::uint32_t field_size) {
  std::vector<GaloisField::Elem> out;
  auto push = [&](const std::string& tok) {
    std::size_t used = 0;
    unsigned long v = std::stoul(tok, &used, 16);
    if (used != tok.size()) throw DomainError("input: bad hex digit in '" + tok + "'");
    if (v >= field_size) throw DomainError("input: digit " + tok + " outside k_D");
    out.push_back(static_cast<GaloisField::Elem>(v));
  };
  if (s.find(':') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) push(tok);
  } else {
    if (field_size > 16) throw DomainError("input: |k_D| > 16, separate digits with ':'");
    for (char c : s) push(std::string(1, c));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restriction of representations of D* to D^1 on finite quotients: checks and tables"};
  app.require_subcommand(1);
  app.fallthrough();
  Common o;
  std::string cache_dir;
  bool no_cache = false;
  app.add_option("--cache-dir", cache_dir, std::string("cache directory (default: $") + kCacheEnv + ")");
  app.add_flag("--no-cache", no_cache, "neither read nor write the cache");

  auto* verify = app.add_subcommand("verify", "run catalogue checks and emit reports");
  std::vector<std::string> checks;
  bool list = false;
  verify->add_option("--check", checks, "check id or name (repeatable)");
  verify->add_flag("--list", list, "print the catalogue");
  verify->add_option("--precision", o.precision, "p_D-adic precision (commutators)");
  verify->add_option("--samples", o.samples, "number of random elements (commutators)");
  add_group_options(verify, o);
  add_output_options(verify, o);

  auto* comm = app.add_subcommand("commutator", "factor a norm-one 1-unit as two commutators");
  std::string input;
  comm->add_option("--precision", o.precision, "p_D-adic precision");
  comm->add_option("--input", input, "level digits of the element in hex, lowest level first");
  add_group_options(comm, o);
  add_output_options(comm, o);

  auto* table = app.add_subcommand("table", "irreducibles of Gamma_f or Delta_f with L-packets");
  std::string group = "delta";
  std::size_t max_order = 400;
  table->add_option("--group", group, "gamma or delta")->check(CLI::IsMember({"gamma", "delta"}));
  table->add_option("--max-order", max_order, "largest group whose regular representation is split");
  add_group_options(table, o);
  add_output_options(table, o);

  auto* dec = app.add_subcommand("decompose", "build one representation and decompose its restriction to Delta_f");
  std::string kind = "tame";
  long c = 1, cF = 0;
  unsigned a = 1;
  dec->add_option("--kind", kind, "tame or wild")->check(CLI::IsMember({"tame", "wild"}));
  dec->add_option("--c", c, "tame: exponent of nu");
  dec->add_option("--a", a, "wild: residue a (index in k_D)");
  dec->add_option("--cf", cF, "wild: exponent of the central character on k_F^*");
  add_group_options(dec, o);
  add_output_options(dec, o);

  auto* cache = app.add_subcommand("cache", "inspect or clear the report cache");
  std::string action = "list", key;
  cache->add_option("action", action, "path, list, show or clear")->check(CLI::IsMember({"path", "list", "show", "clear"}));
  cache->add_option("key", key, "report key for show");
  add_output_options(cache, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  ReportCache store(cache_dir.empty() ? ReportCache::default_dir() : std::filesystem::path(cache_dir));

  try {
    if (verify->parsed()) {
      if (list) {
        json j = json::array();
        std::ostringstream tsv;
        tsv << "id\tname\tsummary\n";
        for (const auto& ci : catalogue()) {
          j.push_back({{"id", ci.id}, {"name", ci.name}, {"summary", ci.summary}});
          tsv << ci.id << '\t' << ci.name << '\t' << ci.summary << '\n';
        }
        emit(o, render(o, j, tsv.str()));
        return kOk;
      }
      if (checks.empty()) throw DomainError("verify needs --check NAME (see --list)");
      for (const auto& ch : checks) find_check(ch);
      auto p = o.params();
      std::vector<json> reports;
      bool failed = false;
      for (const auto& ch : checks) {
        const auto k = ReportCache::key(ch, p);
        std::optional<json> hit = no_cache ? std::nullopt : store.get(k);
        json r;
        if (hit) {
          r = *hit;
        } else {
          r = run_check(ch, p).to_json();
          if (!no_cache) store.put(k, r);
        }
        failed = failed || r.at("verdict") == "fail";
        reports.push_back(r);
      }
      json j = reports.size() == 1 ? reports[0] : json(reports);
      emit(o, render(o, j, report_tsv(reports)));
      return failed ? kFail : kOk;
    }

    if (comm->parsed()) {
      auto p = o.params();
      auto alg = Algebra::create(p.kind(), p.p(), p.e(), p.d, 1, p.precision);
      QuatElem x;
      json j{{"params", to_json(p)}};
      if (input.empty()) {
        std::mt19937_64 rng(p.seed);
        x = random_norm_one_unit(*alg, p.precision, rng);
        j["input"] = "random";
      } else {
        x = quat_from_level_digits(*alg, parse_digits(input, alg->kD().size()), p.precision);
        j["input"] = input;
      }
      j["element"] = quat_to_json(x);
      if (!alg->is_norm_one(x) || alg->unit_level(x) < 1) {
        j["error"] = "input is not a norm-one 1-unit";
        j["nrd"] = alg->F().to_string(alg->nrd(x));
        emit(o, render(o, j, "error\tnrd\ninput is not a norm-one 1-unit\t" + j["nrd"].get<std::string>() + "\n"));
        return kUsage;
      }
      auto w = factor_two_commutators(*alg, x, p.precision);
      w.seed = p.seed;
      auto chk = verify_witness(*alg, w);
      j["witness"] = witness_to_json(*alg, w);
      j["verified"] = chk.ok;
      j["agreement"] = chk.agreement;
      if (!chk.ok) j["reason"] = chk.reason;
      std::ostringstream tsv;
      tsv << "d\tq\tprecision\tseed\tverified\tagreement\n"
          << p.d << '\t' << p.q << '\t' << p.precision << '\t' << p.seed << '\t' << chk.ok << '\t' << chk.agreement << '\n';
      emit(o, render(o, j, tsv.str()));
      return chk.ok ? kOk : kFail;
    }

    if (table->parsed()) {
      auto t = irreducibles_table(o.params(), group, max_order);
      emit(o, render(o, to_json(t), to_tsv(t)));
      return kOk;
    }

    if (dec->parsed()) {
      auto p = o.params();
      auto uq = make_quotient(p, p.f);
      auto w = make_work(*uq, p.ell);
      Instance in{kind, c, WildDatum{a, cF}};
      auto e = evaluate(*uq, w, in, p.seed);
      json j = e.to_json();
      j["params"] = to_json(p);
      j["mode"] = w.mode;
      std::ostringstream tsv;
      tsv << "label\tdim\tcommutant\tpattern\tcomponent_dims\n"
          << in.label() << '\t' << e.built.Pi.dim() << '\t' << e.dec.commutant_dim << '\t' << e.dec.pattern << '\t';
      for (std::size_t i = 0; i < e.dec.components.size(); ++i)
        tsv << (i ? "," : "") << e.dec.components[i].dim << 'x' << e.dec.components[i].multiplicity;
      tsv << '\n';
      emit(o, render(o, j, tsv.str()));
      return kOk;
    }

    if (cache->parsed()) {
      if (action == "path") {
        emit(o, store.dir().string() + "\n");
      } else if (action == "clear") {
        const auto n = store.clear();
        emit(o, render(o, json{{"removed", n}}, "removed\n" + std::to_string(n) + "\n"));
      } else if (action == "show") {
        auto r = store.get(key);
        if (!r) throw DomainError("no cached report " + key);
        emit(o, render(o, *r, report_tsv({*r})));
      } else {
        json j = json::array();
        std::vector<json> rs;
        for (auto& [k, r] : store.list()) {
          j.push_back({{"key", k}, {"id", r.at("id")}, {"check", r.at("check")}, {"verdict", r.at("verdict")}});
          rs.push_back(r);
        }
        emit(o, render(o, j, report_tsv(rs)));
      }
      return kOk;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
