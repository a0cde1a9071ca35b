#include "qmod/report.hpp"

#include <sstream>

#include <json.hpp>

namespace qmod {

using json = nlohmann::ordered_json;

void CheckReport::add_param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
}

void CheckReport::add_param(std::string key, std::int64_t value) {
  params.emplace_back(std::move(key), std::to_string(value));
}

void CheckReport::expect(std::string name, std::string expected, std::string actual, bool ok) {
  witnesses.push_back({std::move(name), std::move(expected), std::move(actual), ok});
}

void CheckReport::inform(std::string name, std::string actual) {
  witnesses.push_back({std::move(name), std::nullopt, std::move(actual), true});
}

void CheckReport::finalize() {
  bool any = false;
  passed = true;
  for (const auto& w : witnesses) {
    if (w.expected) any = true;
    passed = passed && w.ok;
  }
  passed = passed && any;
}

void CheckReport::note(const std::string& text) {
  if (!notes.empty()) notes += "; ";
  notes += text;
}

std::size_t ReportBundle::passed_count() const {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.passed ? 1 : 0;
  return n;
}

std::string ReportBundle::summary_line() const {
  return "PASSED " + std::to_string(passed_count()) + "/" + std::to_string(reports.size()) +
         " (skipped " + std::to_string(skipped.size()) + ")";
}

namespace {

json report_json(const CheckReport& r) {
  json j;
  j["check_id"] = r.check_id;
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["passed"] = r.passed;
  json expected = json::object();
  json actual = json::object();
  for (const auto& w : r.witnesses) {
    if (w.expected) expected[w.name] = *w.expected;
    actual[w.name] = w.actual;
  }
  j["expected"] = expected;
  j["actual"] = actual;
  j["notes"] = r.notes;
  return j;
}

std::string params_text(const CheckReport& r) {
  std::string out;
  for (const auto& [k, v] : r.params) {
    if (!out.empty()) out += " ";
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

std::string to_json(const CheckReport& report, int indent) { return report_json(report).dump(indent); }

std::string to_json(const ReportBundle& bundle, int indent) {
  json j;
  json run = json::object();
  for (const auto& [k, v] : bundle.run) run[k] = v;
  j["run"] = run;
  json reports = json::array();
  for (const auto& r : bundle.reports) reports.push_back(report_json(r));
  j["reports"] = reports;
  json skipped = json::array();
  for (const auto& s : bundle.skipped) {
    json e;
    e["curve"] = std::to_string(s.curve);
    e["p"] = std::to_string(s.p);
    if (s.m) e["m"] = std::to_string(*s.m);
    e["reason"] = s.reason;
    skipped.push_back(e);
  }
  j["skipped"] = skipped;
  j["summary"] = {{"passed", std::to_string(bundle.passed_count())},
                  {"total", std::to_string(bundle.reports.size())},
                  {"skipped", std::to_string(bundle.skipped.size())}};
  return j.dump(indent);
}

std::string to_table(const CheckReport& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << r.check_id << "  " << params_text(r);
  for (const auto& w : r.witnesses) {
    os << "  " << w.name << "=" << w.actual;
    if (w.expected) os << " (expected " << *w.expected << ")";
  }
  if (!r.notes.empty()) os << "  # " << r.notes;
  return os.str();
}

std::string to_table(const ReportBundle& bundle) {
  std::ostringstream os;
  for (const auto& r : bundle.reports) os << to_table(r) << "\n";
  for (const auto& s : bundle.skipped) {
    os << "SKIP  curve=" << s.curve << " p=" << s.p;
    if (s.m) os << " m=" << *s.m;
    os << "  " << s.reason << "\n";
  }
  os << bundle.summary_line() << "\n";
  return os.str();
}

std::string series_to_json(const std::string& form, const QSeries& f, int indent) {
  json j;
  j["form"] = form;
  j["prec"] = f.prec();
  json coeffs = json::array();
  for (const auto& [e, c] : f.terms()) coeffs.push_back(json::array({e, c.get_str()}));
  j["coeffs"] = coeffs;
  return j.dump(indent);
}

std::string series_to_table(const QSeries& f) {
  std::ostringstream os;
  for (const auto& [e, c] : f.terms()) os << e << " " << c.get_str() << "\n";
  return os.str();
}

}  // namespace qmod
