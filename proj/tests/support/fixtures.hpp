/*
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#ifndef HYQA_FIXTURE_DIR
#error "HYQA_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace hyqa::testing {

inline std::filesystem::path fixture_path(const std::string& relative) {
  return std::filesystem::path(HYQA_FIXTURE_DIR) / relative;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("hyqa-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Deterministic random OpenQASM 2.0 program.
inline std::string random_qasm(std::mt19937& rng, int max_qubits = 8, int max_ops = 40) {
  std::uniform_int_distribution<int> qubit_count(1, max_qubits);
  const int nq = qubit_count(rng);
  std::uniform_int_distribution<int> op_count(0, max_ops);
  std::uniform_int_distribution<int> pick_qubit(0, nq - 1);
  std::uniform_int_distribution<int> pick_kind(0, 9);
  std::ostringstream out;
  out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out << "qreg q[" << nq << "];\ncreg c[" << nq << "];\ncreg flag[1];\n";
  const int ops = op_count(rng);
  for (int i = 0; i < ops; ++i) {
    const int a = pick_qubit(rng);
    int b = pick_qubit(rng);
    switch (pick_kind(rng)) {
      case 0:
      case 1:
        out << "h q[" << a << "];\n";
        break;
      case 2:
        out << "rz(pi/" << (a + 1) << ") q[" << a << "];\n";
        break;
      case 3:
      case 4:
        if (nq > 1) {
          if (b == a) b = (a + 1) % nq;
          out << "cx q[" << a << "],q[" << b << "];\n";
        } else {
          out << "x q[0];\n";
        }
        break;
      case 5:
        out << "measure q[" << a << "] -> c[" << a << "];\n";
        break;
      case 6:
        out << "reset q[" << a << "];\n";
        break;
      case 7:
        out << "barrier q[" << a << "],q[" << b << "];\n";
        break;
      case 8:
        out << "if(flag==1) x q[" << a << "];\n";
        break;
      case 9:
        out << "measure q[" << a << "] -> flag[0];\n";
        break;
    }
  }
  return out.str();
}

}  // namespace hyqa::testing
