import json

from rest_framework import serializers

from conics.models import JournalEntry, SearchRun


def canonical_json(data) -> str:
    """Byte-deterministic JSON: sorted keys, no whitespace."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


class ConfigurationSerializer(serializers.Serializer):
    name = serializers.CharField()
    lattice = serializers.CharField()
    conics = serializers.IntegerField()
    rank = serializers.IntegerField()
    roots = serializers.IntegerField()
    combinatorial_orbits = serializers.ListField(child=serializers.IntegerField())
    orbits = serializers.IntegerField()
    stabilizer_order = serializers.IntegerField(allow_null=True)
    bnd_total = serializers.IntegerField(allow_null=True)


class CatalogEntrySerializer(serializers.Serializer):
    name = serializers.CharField()
    lattice = serializers.CharField()
    component_norms = serializers.DictField(child=serializers.IntegerField())
    replanted_from = serializers.CharField(allow_null=True)


class ModelReportSerializer(serializers.Serializer):
    type = serializers.CharField()
    discr = serializers.IntegerField()
    lines = serializers.IntegerField()
    conics = serializers.IntegerField()
    irreducible = serializers.IntegerField()
    reducible = serializers.IntegerField()
    transcendental = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))


class VerificationSerializer(serializers.Serializer):
    name = serializers.CharField()
    config = serializers.CharField()
    size = serializers.IntegerField()
    rank = serializers.IntegerField()
    saturated = serializers.BooleanField()
    root_free = serializers.BooleanField()
    admissible = serializers.BooleanField()
    geometric = serializers.BooleanField()
    hyp = serializers.IntegerField()
    discr_span = serializers.IntegerField()
    certificate = serializers.CharField()
    aut = serializers.IntegerField(allow_null=True)
    models = serializers.DictField(child=ModelReportSerializer())
    mismatches = serializers.ListField(child=serializers.CharField())


class GraphSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=0)
    edges = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField(), min_length=3, max_length=3))

    def validate_edges(self, value):
        n = self.initial_data.get("n", 0)
        for i, j, m in value:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise serializers.ValidationError(f"edge ({i}, {j}) out of range")
            if m not in (1, 2):
                raise serializers.ValidationError(f"edge multiplicity {m} not in (1, 2)")
        return value


class SearchRunSerializer(serializers.ModelSerializer):
    entries = serializers.IntegerField(source="entries.count", read_only=True)

    class Meta:
        model = SearchRun
        fields = ["id", "journal", "config_id", "strategy", "budget", "seed", "threads", "status", "entries"]


class JournalEntrySerializer(serializers.ModelSerializer):
    class Meta:
        model = JournalEntry
        fields = ["config_id", "digest", "size", "rank", "defect", "geometric", "members", "pattern"]
