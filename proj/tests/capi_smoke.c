// Copyright 2026 The padic-hh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* Compiles the public header as C and makes one round trip through it. */
#include <stdio.h>
#include <string.h>

#include "padic_hh.h"

int main(void) {
  phh_kernel* kernel = NULL;
  phh_function* ball = NULL;
  phh_function* image = NULL;
  char* json = NULL;
  int status = 1;

  if (phh_kernel_parse("hardy", &kernel) != PHH_OK) goto done;
  if (phh_function_ball(2, 0, &ball) != PHH_OK) goto done;
  if (phh_apply(kernel, ball, &image) != PHH_OK) goto done;
  if (phh_function_to_json(image, &json) != PHH_OK) goto done;
  if (strstr(json, "\"geometric\"") == NULL) goto done;
  if (phh_kernel_parse("nonsense", &kernel) != PHH_ERR_PARSE) goto done;
  status = 0;

done:
  if (status != 0) fprintf(stderr, "C smoke test failed: %s\n", phh_last_error_message());
  phh_string_free(json);
  phh_function_free(image);
  phh_function_free(ball);
  phh_kernel_free(kernel);
  return status;
}
