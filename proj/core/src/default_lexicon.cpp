#include "credrep/svce.hpp"

namespace credrep {

namespace {

struct SeedTerm {
    const char* term;
    Category category;
};

// Seed gazetteer. Deliberately small and editable; production deployments
// load a domain lexicon via load_lexicon().
constexpr SeedTerm kSeedTerms[] = {
    // means of attack
    {"sql injection", Category::means_of_attack},
    {"code injection", Category::means_of_attack},
    {"command injection", Category::means_of_attack},
    {"buffer overflow", Category::means_of_attack},
    {"heap overflow", Category::means_of_attack},
    {"stack overflow", Category::means_of_attack},
    {"integer overflow", Category::means_of_attack},
    {"use after free", Category::means_of_attack},
    {"double free", Category::means_of_attack},
    {"format string attack", Category::means_of_attack},
    {"cross site scripting", Category::means_of_attack},
    {"xss", Category::means_of_attack},
    {"csrf", Category::means_of_attack},
    {"cross site request forgery", Category::means_of_attack},
    {"xxe", Category::means_of_attack},
    {"path traversal", Category::means_of_attack},
    {"directory traversal", Category::means_of_attack},
    {"remote code execution", Category::means_of_attack},
    {"rce", Category::means_of_attack},
    {"privilege escalation", Category::means_of_attack},
    {"phishing", Category::means_of_attack},
    {"spear phishing", Category::means_of_attack},
    {"whaling", Category::means_of_attack},
    {"vishing", Category::means_of_attack},
    {"smishing", Category::means_of_attack},
    {"pharming", Category::means_of_attack},
    {"ransomware", Category::means_of_attack},
    {"malware", Category::means_of_attack},
    {"spyware", Category::means_of_attack},
    {"adware", Category::means_of_attack},
    {"trojan", Category::means_of_attack},
    {"worm", Category::means_of_attack},
    {"rootkit", Category::means_of_attack},
    {"keylogger", Category::means_of_attack},
    {"backdoor", Category::means_of_attack},
    {"botnet", Category::means_of_attack},
    {"ddos", Category::means_of_attack},
    {"denial of service", Category::means_of_attack},
    {"brute force", Category::means_of_attack},
    {"dictionary attack", Category::means_of_attack},
    {"credential stuffing", Category::means_of_attack},
    {"password spraying", Category::means_of_attack},
    {"man in the middle", Category::means_of_attack},
    {"session hijacking", Category::means_of_attack},
    {"dns spoofing", Category::means_of_attack},
    {"arp spoofing", Category::means_of_attack},
    {"ip spoofing", Category::means_of_attack},
    {"dns poisoning", Category::means_of_attack},
    {"social engineering", Category::means_of_attack},
    {"watering hole", Category::means_of_attack},
    {"drive-by download", Category::means_of_attack},
    {"supply chain attack", Category::means_of_attack},
    {"zero day", Category::means_of_attack},
    {"zero-day", Category::means_of_attack},
    {"clickjacking", Category::means_of_attack},
    {"typosquatting", Category::means_of_attack},
    {"cryptojacking", Category::means_of_attack},
    {"replay attack", Category::means_of_attack},
    {"pass the hash", Category::means_of_attack},
    {"kerberoasting", Category::means_of_attack},
    {"sim swapping", Category::means_of_attack},
    {"race condition", Category::means_of_attack},
    {"sandbox escape", Category::means_of_attack},
    {"heap spray", Category::means_of_attack},
    {"logic bomb", Category::means_of_attack},
    {"port scanning", Category::means_of_attack},
    {"packet sniffing", Category::means_of_attack},
    {"eavesdropping", Category::means_of_attack},
    {"exploit kit", Category::means_of_attack},
    {"hardfork attack", Category::means_of_attack},
    // consequences
    {"data breach", Category::consequence},
    {"data leak", Category::consequence},
    {"data loss", Category::consequence},
    {"data exfiltration", Category::consequence},
    {"data corruption", Category::consequence},
    {"information disclosure", Category::consequence},
    {"identity theft", Category::consequence},
    {"account takeover", Category::consequence},
    {"credential theft", Category::consequence},
    {"defacement", Category::consequence},
    {"service outage", Category::consequence},
    {"service disruption", Category::consequence},
    {"downtime", Category::consequence},
    {"financial loss", Category::consequence},
    {"system compromise", Category::consequence},
    {"memory corruption", Category::consequence},
    {"crash", Category::consequence},
    // software
    {"mozilla firefox", Category::software},
    {"firefox", Category::software},
    {"google chrome", Category::software},
    {"chrome", Category::software},
    {"internet explorer", Category::software},
    {"microsoft edge", Category::software},
    {"safari", Category::software},
    {"tor browser", Category::software},
    {"apache", Category::software},
    {"nginx", Category::software},
    {"tomcat", Category::software},
    {"struts", Category::software},
    {"mysql", Category::software},
    {"postgresql", Category::software},
    {"mongodb", Category::software},
    {"redis", Category::software},
    {"memcached", Category::software},
    {"elasticsearch", Category::software},
    {"wordpress", Category::software},
    {"drupal", Category::software},
    {"joomla", Category::software},
    {"joomanager", Category::software},
    {"openssl", Category::software},
    {"openssh", Category::software},
    {"adobe flash", Category::software},
    {"flash player", Category::software},
    {"adobe reader", Category::software},
    {"acrobat", Category::software},
    {"java", Category::software},
    {"log4j", Category::software},
    {"jenkins", Category::software},
    {"docker", Category::software},
    {"kubernetes", Category::software},
    {"vmware", Category::software},
    {"citrix", Category::software},
    {"outlook", Category::software},
    {"exchange server", Category::software},
    {"sharepoint", Category::software},
    {"microsoft office", Category::software},
    {"teamviewer", Category::software},
    {"php", Category::software},
    {"jquery", Category::software},
    {"verge wallet", Category::software},
    // hardware
    {"router", Category::hardware},
    {"switch", Category::hardware},
    {"modem", Category::hardware},
    {"access point", Category::hardware},
    {"raspberry pi", Category::hardware},
    {"arduino", Category::hardware},
    {"iot device", Category::hardware},
    {"smart camera", Category::hardware},
    {"usb drive", Category::hardware},
    {"hard drive", Category::hardware},
    {"ssd", Category::hardware},
    {"cpu", Category::hardware},
    {"gpu", Category::hardware},
    {"motherboard", Category::hardware},
    {"chipset", Category::hardware},
    {"plc", Category::hardware},
    {"scada", Category::hardware},
    // operating systems
    {"windows", Category::operating_system},
    {"windows 10", Category::operating_system},
    {"windows 7", Category::operating_system},
    {"windows xp", Category::operating_system},
    {"windows server", Category::operating_system},
    {"linux", Category::operating_system},
    {"ubuntu", Category::operating_system},
    {"debian", Category::operating_system},
    {"centos", Category::operating_system},
    {"fedora", Category::operating_system},
    {"red hat", Category::operating_system},
    {"kali linux", Category::operating_system},
    {"freebsd", Category::operating_system},
    {"solaris", Category::operating_system},
    {"unix", Category::operating_system},
    {"macos", Category::operating_system},
    {"os x", Category::operating_system},
    {"android", Category::operating_system},
    {"ios", Category::operating_system},
    {"chrome os", Category::operating_system},
    // versions (open class; mostly pattern-matched)
    {"service pack 1", Category::version},
    {"service pack 2", Category::version},
    {"service pack 3", Category::version},
    // network terms
    {"tcp", Category::network_term},
    {"udp", Category::network_term},
    {"dns", Category::network_term},
    {"http", Category::network_term},
    {"https", Category::network_term},
    {"ftp", Category::network_term},
    {"ssh", Category::network_term},
    {"tls", Category::network_term},
    {"ssl", Category::network_term},
    {"vpn", Category::network_term},
    {"ip address", Category::network_term},
    {"subnet", Category::network_term},
    {"gateway", Category::network_term},
    {"proxy", Category::network_term},
    {"firewall", Category::network_term},
    {"dhcp", Category::network_term},
    {"smtp", Category::network_term},
    {"imap", Category::network_term},
    {"pop3", Category::network_term},
    {"icmp", Category::network_term},
    {"bgp", Category::network_term},
    {"lan", Category::network_term},
    {"wan", Category::network_term},
    {"wifi", Category::network_term},
    {"wpa2", Category::network_term},
    {"mac address", Category::network_term},
    {"packet", Category::network_term},
    {"socket", Category::network_term},
    {"certificate", Category::network_term},
    {"dmz", Category::network_term},
    {"nat", Category::network_term},
    {"load balancer", Category::network_term},
    {"cdn", Category::network_term},
    {"api endpoint", Category::network_term},
    // file names (open class; mostly pattern-matched)
    {"autorun.inf", Category::file_name},
    {"ntds.dit", Category::file_name},
    {"hosts file", Category::file_name},
    {"shadow file", Category::file_name},
    // technical terms
    {"vulnerability", Category::technical_term},
    {"exploit", Category::technical_term},
    {"patch", Category::technical_term},
    {"hotfix", Category::technical_term},
    {"cve", Category::technical_term},
    {"encryption", Category::technical_term},
    {"decryption", Category::technical_term},
    {"cryptography", Category::technical_term},
    {"authentication", Category::technical_term},
    {"authorization", Category::technical_term},
    {"hash", Category::technical_term},
    {"password", Category::technical_term},
    {"passphrase", Category::technical_term},
    {"payload", Category::technical_term},
    {"shellcode", Category::technical_term},
    {"sandbox", Category::technical_term},
    {"honeypot", Category::technical_term},
    {"penetration testing", Category::technical_term},
    {"pentest", Category::technical_term},
    {"red team", Category::technical_term},
    {"blue team", Category::technical_term},
    {"threat actor", Category::technical_term},
    {"threat intelligence", Category::technical_term},
    {"advanced persistent threat", Category::technical_term},
    {"apt", Category::technical_term},
    {"incident response", Category::technical_term},
    {"forensics", Category::technical_term},
    {"siem", Category::technical_term},
    {"ids", Category::technical_term},
    {"ips", Category::technical_term},
    {"antivirus", Category::technical_term},
    {"endpoint", Category::technical_term},
    {"firmware", Category::technical_term},
    {"bios", Category::technical_term},
    {"kernel", Category::technical_term},
    {"mitigation", Category::technical_term},
    {"key exchange", Category::technical_term},
    {"two factor authentication", Category::technical_term},
    {"2fa", Category::technical_term},
    {"mfa", Category::technical_term},
    {"security advisory", Category::technical_term},
    {"bug bounty", Category::technical_term},
    {"responsible disclosure", Category::technical_term},
    {"attacker", Category::technical_term},
    {"hacker", Category::technical_term},
    {"hacktivist", Category::technical_term},
    {"script kiddie", Category::technical_term},
    {"dark web", Category::technical_term},
    {"indicators of compromise", Category::technical_term},
    {"ioc", Category::technical_term},
    {"obfuscation", Category::technical_term},
    {"persistence", Category::technical_term},
    {"lateral movement", Category::technical_term},
    {"command and control", Category::technical_term},
    {"c2", Category::technical_term},
    {"exfiltration", Category::technical_term},
    {"wallet", Category::technical_term},
    {"cryptocurrency", Category::technical_term},
    {"blockchain", Category::technical_term},
};

} // namespace

const ConceptLexicon& default_lexicon() {
    static const ConceptLexicon lexicon = [] {
        ConceptLexicon l;
        for (const SeedTerm& seed : kSeedTerms) {
            l.add(seed.term, seed.category);
        }
        return l;
    }();
    return lexicon;
}

} // namespace credrep
