// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "harmonica/harmonica.h"

namespace {

constexpr int kDomainFailure = 1;
constexpr int kUsageFailure = 2;

struct Usage {
  std::string message;
};

// A failed library call, carrying the status for exit-code selection.
struct Failure {
  hm_status status;
  std::string json;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage{"cannot read " + path};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void check(hm_status st) {
  if (st != HM_OK) throw Failure{st, hm_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  hm_string_free(s);
  return out;
}

class Complex {
 public:
  explicit Complex(const std::string& path) { check(hm_complex_load(path.c_str(), &cx_)); }
  ~Complex() { hm_complex_free(cx_); }
  Complex(const Complex&) = delete;
  Complex& operator=(const Complex&) = delete;
  const hm_complex* get() const { return cx_; }

 private:
  hm_complex* cx_ = nullptr;
};

template <class F>
std::string call(F&& f) {
  char* out = nullptr;
  check(f(&out));
  return take(out);
}

struct Options {
  std::string input;
  std::vector<std::string> chains;
  std::string field = "q";
  int degree = 1;
  std::string cycle;
  std::string radius;
  int max_dim = 2;
  std::uint64_t cap = 0;
  std::uint64_t bound = 13;
  std::uint64_t seed = 0;
  std::string output;
  std::string out_path;
  std::string sample;
  bool allow_nonunique = false;
  bool search = false;
  bool degree_given = false;
};

void write_output(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_path, std::ios::binary);
  if (!out || !(out << text)) throw Usage{"cannot write " + o.out_path};
}

void expect_format(const Options& o, const char* format) {
  if (!o.output.empty() && o.output != format) throw Usage{"this command writes " + std::string(format)};
}

std::string run_validate(const Options& o) {
  // Loading rejects d∘d != 0 and malformed facets; report those as an
  // invalid complex rather than as an unreadable file.
  hm_complex* cx = nullptr;
  hm_status st = hm_complex_load(o.input.c_str(), &cx);
  if (st == HM_PARSE_ERROR || st == HM_IO_ERROR) check(st);
  if (st != HM_OK) {
    std::cout << "{\n  \"valid\": false,\n  \"reason\": " << hm_last_error() << "\n}\n";
    throw Failure{st, hm_last_error()};
  }
  char* out = nullptr;
  st = hm_complex_validate(cx, &out);
  if (st != HM_OK) {
    hm_complex_free(cx);
    check(st);
  }
  auto doc = nlohmann::ordered_json::parse(take(out));
  st = hm_complex_summary(cx, &out);
  hm_complex_free(cx);
  check(st);
  doc.update(nlohmann::ordered_json::parse(take(out)));
  return doc.dump(2) + "\n";
}

// The cycle file names its own degree; an explicit --degree must agree.
std::string cycle_text(const Options& o) {
  if (o.cycle.empty()) throw Usage{"--cycle is required"};
  std::string text = read_file(o.cycle);
  if (o.degree_given) {
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_object() && doc.contains("degree") && doc["degree"].is_number_integer() &&
        doc["degree"].get<long long>() != o.degree) {
      throw Usage{"--degree " + std::to_string(o.degree) + " does not match the cycle's degree"};
    }
  }
  return text;
}

int run(const std::string& command, const Options& o) {
  if (command == "validate") {
    expect_format(o, "json");
    write_output(o, run_validate(o));
    return 0;
  }
  if (command == "vr") {
    expect_format(o, "json");
    if (o.radius.empty()) throw Usage{"--radius is required"};
    std::string csv;
    if (!o.sample.empty()) {
      if (!o.input.empty()) throw Usage{"give either a CSV file or --sample, not both"};
      csv = call([&](char** out) { return hm_sample(o.sample.c_str(), o.seed, out); });
    } else {
      if (o.input.empty()) throw Usage{"a CSV file or --sample is required"};
      csv = read_file(o.input);
    }
    write_output(o, call([&](char** out) { return hm_vietoris_rips(csv.c_str(), o.radius.c_str(), o.max_dim, out); }));
    return 0;
  }

  Complex cx(o.input);
  const hm_complex* x = cx.get();
  std::string result;
  if (command == "diagnose") {
    expect_format(o, "json");
    result = call([&](char** out) { return hm_diagnose(x, o.field.c_str(), o.degree, out); });
  } else if (command == "rep" || command == "harset") {
    expect_format(o, "json");
    const std::string z = cycle_text(o);
    if (command == "harset" || o.allow_nonunique) {
      result = call([&](char** out) { return hm_har_set(x, o.field.c_str(), z.c_str(), out); });
    } else {
      result = call([&](char** out) { return hm_harmonic_representative(x, o.field.c_str(), z.c_str(), out); });
    }
  } else if (command == "hodge") {
    expect_format(o, "json");
    result = call([&](char** out) { return hm_hodge_decomposition(x, o.field.c_str(), o.degree, out); });
  } else if (command == "upsilon") {
    expect_format(o, "json");
    result = call([&](char** out) { return hm_upsilon(x, o.degree, o.cap, out); });
  } else if (command == "primes") {
    expect_format(o, "json");
    if (o.search) {
      std::optional<std::string> z;
      if (!o.cycle.empty()) z = cycle_text(o);
      result = call([&](char** out) {
        return hm_prime_search(x, o.degree, z ? z->c_str() : nullptr, o.bound, o.cap, out);
      });
    } else {
      result = call([&](char** out) { return hm_harmonic_primes(x, o.degree, o.bound, o.cap, out); });
    }
  } else if (command == "render") {
    expect_format(o, "svg");
    if (o.chains.empty() || o.chains.size() > 2) throw Usage{"render takes one or two chain files"};
    const std::string a = read_file(o.chains[0]);
    const std::optional<std::string> b = o.chains.size() == 2 ? std::optional(read_file(o.chains[1])) : std::nullopt;
    result = call([&](char** out) { return hm_render_svg(x, o.field.c_str(), a.c_str(), b ? b->c_str() : nullptr, out); });
  }
  write_output(o, result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic representatives of homology classes over the rationals and finite fields"};
  app.set_version_flag("--version", std::string(hm_version()));
  app.require_subcommand(1);
  Options o;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "Output format")->check(CLI::IsMember({"json", "svg"}));
    sub->add_option("-o,--out", o.out_path, "Write to this file instead of standard output");
  };
  auto add_input = [&](CLI::App* sub) { sub->add_option("input", o.input, "Complex JSON file")->required(); };
  const CLI::Validator field_name(
      [](std::string& name) { return hm_field_check(name.c_str()) == HM_OK ? std::string() : std::string(hm_last_error()); },
      "FIELD");
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "Coefficient field: q or f<p>")->check(field_name);
  };
  auto add_degree = [&](CLI::App* sub) {
    sub->add_option("--degree", o.degree, "Homological degree")->check(CLI::NonNegativeNumber);
  };
  auto add_cap = [&](CLI::App* sub) {
    sub->add_option("--cap", o.cap, "Enumeration cap on candidate subsets (default HARMONICA_CAP or 1000000)");
  };

  auto* validate = app.add_subcommand("validate", "Check d∘d = 0 and closure under faces");
  add_input(validate);
  add_output(validate);

  auto* diagnose = app.add_subcommand("diagnose", "Harmonicity report");
  add_input(diagnose);
  add_field(diagnose);
  add_degree(diagnose);
  add_output(diagnose);

  auto* rep = app.add_subcommand("rep", "Harmonic representative of a cycle");
  add_input(rep);
  add_field(rep);
  add_degree(rep);
  rep->add_option("--cycle", o.cycle, "Cycle JSON file")->required();
  rep->add_flag("--allow-nonunique", o.allow_nonunique, "Report every harmonic representative as a torsor");
  add_output(rep);

  auto* harset = app.add_subcommand("harset", "All harmonic representatives of a cycle's class");
  add_input(harset);
  add_field(harset);
  add_degree(harset);
  harset->add_option("--cycle", o.cycle, "Cycle JSON file")->required();
  add_output(harset);

  auto* hodge = app.add_subcommand("hodge", "Hodge decomposition bases");
  add_input(hodge);
  add_field(hodge);
  add_degree(hodge);
  add_output(hodge);

  auto* ups = app.add_subcommand("upsilon", "Cotree invariant Upsilon");
  add_input(ups);
  add_degree(ups);
  add_cap(ups);
  add_output(ups);

  auto* primes = app.add_subcommand("primes", "Primes guaranteed harmonic, or a direct smallest-prime search");
  add_input(primes);
  add_degree(primes);
  add_cap(primes);
  primes->add_option("--bound", o.bound, "Largest prime considered");
  primes->add_flag("--search", o.search, "Search primes in increasing order with the harmonicity test");
  primes->add_option("--cycle", o.cycle, "Integral cycle for --search (default: a nontrivial cycle)");
  add_output(primes);

  auto* vr = app.add_subcommand("vr", "Vietoris-Rips complex of a point cloud");
  vr->add_option("input", o.input, "CSV point cloud");
  vr->add_option("--radius", o.radius, "Distance threshold (decimal)")->required();
  vr->add_option("--max-dim", o.max_dim, "Largest simplex dimension")->check(CLI::PositiveNumber);
  vr->add_option("--sample", o.sample, "Generate the cloud instead of reading it")
      ->check(CLI::IsMember({"lemniscate", "wedge"}));
  vr->add_option("--seed", o.seed, "Sampler seed");
  add_output(vr);

  auto* render = app.add_subcommand("render", "SVG highlighting the support of one chain or the difference of two");
  add_input(render);
  render->add_option("chains", o.chains, "One or two chain JSON files")->required();
  add_field(render);
  add_output(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageFailure;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->check_lname("degree")) o.degree_given = opt->count() > 0;
  }
  try {
    return run(command, o);
  } catch (const Usage& u) {
    std::cerr << "error: " << u.message << "\n";
    return kUsageFailure;
  } catch (const Failure& f) {
    std::cerr << f.json << "\n";
    return f.status == HM_PARSE_ERROR || f.status == HM_IO_ERROR ? kUsageFailure : kDomainFailure;
  }
}
