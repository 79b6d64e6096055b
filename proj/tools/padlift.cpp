// Command-line front end; all computation goes through the shared library's
// C interface.
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "padlift.h"

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    std::exit(PADLIFT_INVALID_INPUT);
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    std::cerr << "error: " << path << " is not valid JSON\n";
    std::exit(PADLIFT_INVALID_INPUT);
  }
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(PADLIFT_INVALID_INPUT);
  }
  out << content;
}

int run(const json& job, const std::string& json_out,
        const std::string& dot_out) {
  char* report_text = nullptr;
  int status = padlift_run_job(job.dump().c_str(), &report_text);
  std::string report = report_text ? report_text : "";
  padlift_string_free(report_text);
  if (report.empty()) {
    std::cerr << "error: " << padlift_last_error() << "\n";
    return status;
  }
  std::cout << report << "\n";
  if (!json_out.empty()) write_file(json_out, report + "\n");
  if (!dot_out.empty()) {
    json rep = json::parse(report, nullptr, false);
    if (rep.is_discarded() || !rep.contains("dot")) {
      std::cerr << "error: this command produced no DOT output\n";
      return PADLIFT_INVALID_INPUT;
    }
    const json& dots = rep["dot"];
    if (dots.size() == 1) {
      write_file(dot_out, dots[0]["content"].get<std::string>());
    } else {
      std::string index;
      for (const auto& d : dots) {
        std::string path = dot_out + "." + d["name"].get<std::string>() + ".dot";
        write_file(path, d["content"].get<std::string>());
        index += path + "\n";
      }
      write_file(dot_out + ".index", index);
    }
  }
  return status;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lifting of finite dynamics to p-adic ball dynamics"};
  app.require_subcommand(1);

  long p = 2, f = 1, depth = 1, precision = 4, max_n = 3, size_limit = 0;
  long xbar = 0, period = 1, target_n = 2, c_exp = 0, seed = 0;
  long c1 = 0, c2 = 0, n = 1;
  std::string graph_file, poly, mode = "decompose", json_out, dot_out;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--size-limit", size_limit, "enumeration cap");
    cmd->add_option("--json", json_out, "write the report to this file");
    cmd->add_option("--dot", dot_out, "write DOT output to this path");
  };
  auto base_job = [&](const std::string& command) {
    json job{{"command", command}};
    if (size_limit > 0) job["size_limit"] = size_limit;
    return job;
  };

  auto* enc = app.add_subcommand("encode", "graph states as p-adic cylinders");
  enc->add_option("graph", graph_file, "graph spec JSON file")->required();
  enc->add_option("--p", p, "prime")->required();
  enc->add_option("--depth", depth, "cylinder depth")->required();
  add_common(enc);

  auto* cert = app.add_subcommand("certify", "certify a polynomial interpreter");
  cert->add_option("graph", graph_file)->required();
  cert->add_option("polynomial", poly)->required();
  cert->add_option("--p", p)->required();
  cert->add_option("--depth", depth)->required();
  cert->add_option("--f", f, "residue field degree");
  cert->add_option("--precision", precision, "working precision for f > 1");
  add_common(cert);

  auto* syn = app.add_subcommand("synthesize",
                                 "piecewise-affine pieces and interpolant");
  syn->add_option("graph", graph_file)->required();
  syn->add_option("--p", p)->required();
  syn->add_option("--depth", depth)->required();
  add_common(syn);

  auto* cls = app.add_subcommand("classify", "per-ball interpretation types");
  cls->add_option("graph", graph_file)->required();
  cls->add_option("polynomial", poly)->required();
  cls->add_option("--p", p)->required();
  cls->add_option("--depth", depth)->required();
  add_common(cls);

  auto* dcrt = app.add_subcommand("dcrt", "decompose or assemble via CRT");
  dcrt->add_option("file", graph_file, "graph spec or components file")
      ->required();
  dcrt->add_option("--mode", mode, "decompose | assemble");
  add_common(dcrt);

  auto* tow = app.add_subcommand("tower", "compatible levels of a polynomial");
  tow->add_option("polynomial", poly)->required();
  tow->add_option("--p", p)->required();
  tow->add_option("--max-n", max_n)->required();
  tow->add_option("--seed", seed, "cycle-growth seed residue");
  add_common(tow);

  auto* hen = app.add_subcommand("hensel", "lift an exact residue cycle");
  hen->add_option("polynomial", poly)->required();
  hen->add_option("--p", p)->required();
  hen->add_option("--xbar", xbar, "residue mod p")->required();
  hen->add_option("--period", period)->required();
  hen->add_option("--target-n", target_n)->required();
  add_common(hen);

  auto* pro = app.add_subcommand("profinite-check",
                                 "tower convergence certificates");
  pro->add_option("polynomial", poly)->required();
  pro->add_option("--p", p)->required();
  pro->add_option("--max-n", max_n)->required();
  pro->add_option("--c-exp", c_exp, "Cauchy margin exponent");
  add_common(pro);

  auto* rig = app.add_subcommand("rigidity",
                                 "compare cylinder graphs of z^2 + c");
  rig->add_option("--c1", c1)->required();
  rig->add_option("--c2", c2)->required();
  rig->add_option("--p", p)->required();
  rig->add_option("--n", n)->required();
  add_common(rig);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : PADLIFT_INVALID_INPUT;
  }

  json job;
  if (enc->parsed()) {
    job = base_job("encode");
    job["graph"] = read_json_file(graph_file);
    job["p"] = p;
    job["depth"] = depth;
  } else if (cert->parsed()) {
    job = base_job("certify");
    job["graph"] = read_json_file(graph_file);
    job["polynomial"] = poly;
    job["p"] = p;
    job["depth"] = depth;
    job["f"] = f;
    job["precision"] = precision;
  } else if (syn->parsed()) {
    job = base_job("synthesize");
    job["graph"] = read_json_file(graph_file);
    job["p"] = p;
    job["depth"] = depth;
  } else if (cls->parsed()) {
    job = base_job("classify");
    job["graph"] = read_json_file(graph_file);
    job["polynomial"] = poly;
    job["p"] = p;
    job["depth"] = depth;
  } else if (dcrt->parsed()) {
    job = base_job("dcrt");
    job["mode"] = mode;
    json doc = read_json_file(graph_file);
    if (doc.contains("components"))
      job["components"] = doc["components"];
    else
      job["graph"] = doc;
  } else if (tow->parsed()) {
    job = base_job("tower");
    job["polynomial"] = poly;
    job["p"] = p;
    job["max_n"] = max_n;
    job["seed"] = seed;
  } else if (hen->parsed()) {
    job = base_job("hensel");
    job["polynomial"] = poly;
    job["p"] = p;
    job["xbar"] = xbar;
    job["period"] = period;
    job["target_n"] = target_n;
  } else if (pro->parsed()) {
    job = base_job("profinite-check");
    job["polynomial"] = poly;
    job["p"] = p;
    job["max_n"] = max_n;
    job["c_exp"] = c_exp;
  } else if (rig->parsed()) {
    job = base_job("rigidity");
    job["c1"] = c1;
    job["c2"] = c2;
    job["p"] = p;
    job["n"] = n;
  }
  return run(job, json_out, dot_out);
}
