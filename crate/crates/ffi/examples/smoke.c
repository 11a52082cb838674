#include <stdio.h>
#include "coha_lab.h"
int main(void) {
  CohaQuiver *q = NULL;
  if (coha_quiver_parse("vertices 1\narrow a 0 0\narrow b 0 0\nframing 1\n", &q) != COHA_STATUS_OK) return 1;
  char *s = NULL;
  if (coha_trees(q, "3", NULL, NULL, &s) != COHA_STATUS_OK) return 2;
  printf("%s\n", s);
  coha_string_free(s);
  if (coha_partition_to_tree(q, "[9]", "1", NULL, NULL, &s) != COHA_STATUS_NOT_IN_S) return 3;
  printf("error: %s\n", coha_last_error());
  coha_quiver_free(q);
  return 0;
}
