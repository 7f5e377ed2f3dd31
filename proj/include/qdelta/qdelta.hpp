#pragma once

#include <qdelta/deltaseq.hpp>
#include <qdelta/parallel.hpp>
#include <qdelta/qfunc.hpp>
#include <qdelta/quad.hpp>
#include <qdelta/report.hpp>
#include <qdelta/superstat.hpp>
#include <qdelta/testfn.hpp>
