#pragma once

#include <qdelta/quad/double_exponential.hpp>
#include <qdelta/quad/gauss_kronrod.hpp>
#include <qdelta/quad/laguerre.hpp>
#include <qdelta/quad/real_line.hpp>
#include <qdelta/quad/types.hpp>
