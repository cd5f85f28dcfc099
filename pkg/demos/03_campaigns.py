"""
Verification campaigns
======================

Exhaustive runs over every orientation at tiny sizes, then a seeded random
run at k = 6.
"""

from partite_eppa import CampaignConfig, run_campaign

exhaustive = run_campaign(CampaignConfig(n=2, ks=(2, 4), oracle=True, random_completions=2))
print("bipartite, k <= 4:", exhaustive.tested, "maps,", exhaustive.failed, "failures")

tri = run_campaign(CampaignConfig(n=3, ks=(3,)))
print("tripartite, k = 3:", tri.tested, "maps,", tri.failed, "failures")

sampled = run_campaign(CampaignConfig(generator="random", n=3, ks=(6,), instances_per_k=5,
                                      phi_sample=100, seed=7))
print("tripartite, k = 6, sampled:", sampled.tested, "maps,", sampled.failed, "failures")
for row in sampled.per_instance:
    print("  ", row)
