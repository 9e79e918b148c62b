/*
 * qbrach.cpp - command-line entry point.
 */
#include <exception>
#include <iostream>

#include "qbrach/cli.hpp"

int main(int argc, char **argv) {
  try {
    return qbrach::run_cli(argc, argv, std::cout, std::cerr);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
}
